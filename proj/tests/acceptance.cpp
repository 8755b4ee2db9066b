// Acceptance suite: one criterion per function, each printing a single
// PASS/FAIL line with the measured quantities. Run all criteria with no
// arguments or a single one with --criterion K.

#include "mcor/copula.hpp"
#include "mcor/experiments.hpp"
#include "mcor/harness.hpp"
#include "mcor/inference.hpp"
#include "mcor/measures.hpp"
#include "mcor/rng.hpp"

#include "oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace mcor;

namespace {

const KernelSpec kEuclid = KernelSpec::euclidean_power(1.0);

Matrix columns_to_matrix(const std::vector<std::vector<double>>& cols) {
    Matrix m(cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
    return m;
}

std::vector<double> normal_column(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = normal_quantile(rng.uniform());
    return v;
}

double table_mean(const nlohmann::json& report, const std::string& pair) {
    for (const auto& row : report.at("table"))
        if (row.at("pair") == pair) return row.at("mean").get<double>();
    throw std::runtime_error("pair not in table: " + pair);
}

// ---------------------------------------------------------------- criteria

// Every variant and estimator kind agrees with the naive-loop oracle on 50
// random small instances within 1e-10.
bool criterion_1(std::string& detail) {
    Rng rng(0xACCE01);
    const std::vector<MeasureVariant> variants = {
        MeasureVariant::mcor_total,    MeasureVariant::mcor_lower,
        MeasureVariant::mcor_upper,    MeasureVariant::mcor_unnormalized,
        MeasureVariant::mcor_pairwise, MeasureVariant::multivariance_normalized};

    double worst = 0.0;
    int checked = 0, degenerate_pairs = 0;
    for (int instance = 0; instance < 50; ++instance) {
        const std::size_t n = 4 + rng.below(9);  // 4..12
        const std::size_t nc = 2 + rng.below(2); // 2..3
        std::vector<ComponentSpec> specs;
        oracle::Setup setup;
        std::size_t col = 0;
        for (std::size_t i = 0; i < nc; ++i) {
            const std::size_t d = 1 + rng.below(2); // 1..2
            std::vector<std::size_t> cols;
            for (std::size_t k = 0; k < d; ++k) cols.push_back(col++);
            const double alpha = 0.3 + 1.5 * rng.uniform();
            specs.push_back(ComponentSpec{cols, KernelSpec::euclidean_power(alpha)});
            setup.components.push_back(cols);
            setup.alphas.push_back(alpha);
        }
        Matrix data(n, col);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < col; ++c) data(r, c) = normal_quantile(rng.uniform());
        const ComponentPartition partition(specs, col);

        for (EstimatorKind kind : {EstimatorKind::biased, EstimatorKind::bias_corrected}) {
            const MeasureEngine engine(data, partition, kind);
            const bool biased = kind == EstimatorKind::biased;
            for (MeasureVariant v : variants) {
                bool impl_degenerate = false, oracle_degenerate = false;
                double got = 0.0, expect = 0.0;
                try {
                    got = engine.squared(v);
                } catch (const degenerate_error&) {
                    impl_degenerate = true;
                }
                try {
                    expect = oracle::squared(data, setup, v, biased);
                } catch (const degenerate_error&) {
                    oracle_degenerate = true;
                }
                if (impl_degenerate != oracle_degenerate) {
                    detail = "degeneracy mismatch on instance " + std::to_string(instance);
                    return false;
                }
                if (impl_degenerate) {
                    ++degenerate_pairs;
                    continue;
                }
                const double diff = std::fabs(got - expect) / std::max(1.0, std::fabs(expect));
                worst = std::max(worst, diff);
                ++checked;
            }
        }
    }
    std::ostringstream ss;
    ss << checked << " comparisons, worst relative deviation " << worst << ", "
       << degenerate_pairs << " matched degenerate cases";
    detail = ss.str();
    return worst <= 1e-10;
}

// Marginal-table reproduction at rho = 0.8, bias corrected.
bool criterion_2(std::string& detail) {
    ExperimentParams params;
    params.cases = 20;
    params.n = 1000;
    params.rho = 0.8;
    params.estimator = EstimatorKind::bias_corrected;
    params.seed = 91;
    const nlohmann::json report = run_marginal_table(params);

    const double norm_norm = table_mean(report, "norm/norm");
    const double bern_bern = table_mean(report, "bern/bern");
    const double exp_chi = table_mean(report, "exp/chi");
    const double norm_chi = table_mean(report, "norm/chi");
    const double unif_chi = table_mean(report, "unif/chi");

    std::ostringstream ss;
    ss << "norm/norm " << norm_norm << " (0.75 +- 0.03), bern/bern " << bern_bern
       << " (0.58 +- 0.03), exp/chi " << exp_chi << " > norm/chi " << norm_chi << " > unif/chi "
       << unif_chi;
    detail = ss.str();
    return std::fabs(norm_norm - 0.75) <= 0.03 && std::fabs(bern_bern - 0.58) <= 0.03 &&
           exp_chi > norm_chi && norm_chi > unif_chi;
}

// Copula-measure table: continuous pairs agree at 0.74, Bernoulli at 0.57.
bool criterion_3(std::string& detail) {
    ExperimentParams params;
    params.cases = 20;
    params.n = 1000;
    params.rho = 0.8;
    params.estimator = EstimatorKind::bias_corrected;
    params.seed = 92;
    const nlohmann::json report = run_copula_marginal_table(params);

    const double exp_chi = table_mean(report, "exp/chi");
    const double norm_chi = table_mean(report, "norm/chi");
    const double unif_chi = table_mean(report, "unif/chi");
    const double exp_bern = table_mean(report, "exp/bern");
    const double chi_bern = table_mean(report, "chi/bern");

    bool ok = true;
    for (double v : {exp_chi, norm_chi, unif_chi}) ok = ok && std::fabs(v - 0.74) <= 0.02;
    ok = ok && std::fabs(exp_chi - norm_chi) <= 0.01 && std::fabs(norm_chi - unif_chi) <= 0.01 &&
         std::fabs(exp_chi - unif_chi) <= 0.01;
    for (double v : {exp_bern, chi_bern}) ok = ok && std::fabs(v - 0.57) <= 0.02;

    std::ostringstream ss;
    ss << "continuous/chi " << exp_chi << ", " << norm_chi << ", " << unif_chi
       << " (0.74 +- 0.02, mutual 0.01); bern " << exp_bern << ", " << chi_bern
       << " (0.57 +- 0.02)";
    detail = ss.str();
    return ok;
}

// Within-margin dependence lowers the measure: 0.56 / 0.52 / 0.46.
bool criterion_4(std::string& detail) {
    ExperimentParams params;
    params.cases = 20;
    params.n = 1000;
    params.estimator = EstimatorKind::bias_corrected;
    params.seed = 93;
    const nlohmann::json report = run_within_margin_table(params);

    const auto& table = report.at("table");
    const double m0 = table.at(0).at("mean").get<double>();
    const double m05 = table.at(1).at("mean").get<double>();
    const double m1 = table.at(2).at("mean").get<double>();

    std::ostringstream ss;
    ss << "means " << m0 << " / " << m05 << " / " << m1 << " (0.56 / 0.52 / 0.46, +- 0.03)";
    detail = ss.str();
    return std::fabs(m0 - 0.56) <= 0.03 && std::fabs(m05 - 0.52) <= 0.03 &&
           std::fabs(m1 - 0.46) <= 0.03 && m0 > m05 && m05 > m1;
}

// Dominance counts: the biased estimator favors normal marginals about
// 976/1000; the copula version removes the effect.
bool criterion_5(std::string& detail) {
    const std::vector<MarginalPairSpec> pairs = {{Marginal::norm, Marginal::norm},
                                                 {Marginal::unif, Marginal::unif}};
    const DominanceReport base =
        dominance_experiment(pairs, 0.0, 1000, 100, EstimatorKind::biased, false, 95);
    const double count = base.counts(0, 1);

    int insignificant = 0;
    for (int run = 0; run < 10; ++run) {
        const DominanceReport cop = dominance_experiment(pairs, 0.0, 1000, 100,
                                                         EstimatorKind::biased, true,
                                                         stream_seed(96, run));
        if (cop.p_holm(0, 1) > 0.05) ++insignificant;
    }

    std::ostringstream ss;
    ss << "biased count " << count << "/1000 (976 +- 25), copula Holm p > 0.05 in "
       << insignificant << "/10 runs";
    detail = ss.str();
    return std::fabs(count - 976.0) <= 25.0 && insignificant >= 9;
}

// Near alpha = 2 the measure approaches |pearson| on noisy lines.
bool criterion_6(std::string& detail) {
    Rng rng(0xACCE06);
    const std::size_t n = 1000;
    std::vector<double> x = normal_column(n, rng), y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 3.0 * x[i] + 0.1 * normal_quantile(rng.uniform());

    const auto [m, p] = mcor_alpha_limit_check(x, y, 1.99, EstimatorKind::bias_corrected);
    std::ostringstream ss;
    ss << "mcor(1.99) " << m << ", |pearson| " << p << ", gap " << std::fabs(m - p) << " (< 0.02)";
    detail = ss.str();
    return std::fabs(m - p) < 0.02;
}

// N * M^2 has unit expectation under independence.
bool criterion_7(std::string& detail) {
    const auto partition = ComponentPartition::univariate(3, kEuclid);
    double mean = 0.0;
    const int sims = 500;
    for (int s = 0; s < sims; ++s) {
        Rng rng(stream_seed(0xACCE07, s));
        const Matrix data = columns_to_matrix(
            {normal_column(100, rng), normal_column(100, rng), normal_column(100, rng)});
        mean += *total_multivariance_normalized(data, partition, EstimatorKind::biased).statistic;
    }
    mean /= sims;
    std::ostringstream ss;
    ss << "mean statistic over " << sims << " null simulations: " << mean << " (in [0.9, 1.1])";
    detail = ss.str();
    return mean >= 0.9 && mean <= 1.1;
}

// Higher-order dependence: the total variant detects the Bernoulli triple,
// the pairwise variant does not, and the unnormalized value exceeds 1.
bool criterion_8(std::string& detail) {
    int total_hits = 0, pairwise_misses = 0;
    for (int run = 0; run < 10; ++run) {
        const ScenarioData sd = scenario_generate({Scenario::perturbed_bernoulli, 1000, 0.0, 0,
                                                   0, Marginal::norm, Marginal::norm,
                                                   stream_seed(0xACCE08, run)});
        const TestResult t =
            permutation_test(sd.data, sd.partition, MeasureVariant::mcor_total,
                             EstimatorKind::biased, 999, stream_seed(0xACCE18, run));
        if (t.p_value < 0.01) ++total_hits;
        const TestResult q =
            permutation_test(sd.data, sd.partition, MeasureVariant::mcor_pairwise,
                             EstimatorKind::biased, 999, stream_seed(0xACCE28, run));
        if (q.p_value > 0.05) ++pairwise_misses;
    }

    const ScenarioData fixed = scenario_generate(
        {Scenario::perturbed_bernoulli, 1000, 0.0, 0, 0, Marginal::norm, Marginal::norm, 4242});
    const double unnorm =
        mcor_unnormalized(fixed.data, fixed.partition, EstimatorKind::biased).value;

    std::ostringstream ss;
    ss << "total p < 0.01 in " << total_hits << "/10, pairwise p > 0.05 in " << pairwise_misses
       << "/10, unnormalized value " << unnorm << " (> 1)";
    detail = ss.str();
    return total_hits >= 8 && pairwise_misses >= 8 && unnorm > 1.0;
}

// Exact invariances of the measures and the transform.
bool criterion_9(std::string& detail) {
    Rng rng(0xACCE09);
    const std::size_t n = 60;
    Matrix data(n, 4);
    for (std::size_t r = 0; r < n; ++r) {
        const double shared = normal_quantile(rng.uniform());
        for (std::size_t c = 0; c < 4; ++c)
            data(r, c) = 0.5 * shared + normal_quantile(rng.uniform());
    }
    const KernelSpec k07 = KernelSpec::euclidean_power(0.7);
    const ComponentPartition base({{{0, 1}, kEuclid}, {{2}, k07}, {{3}, kEuclid}}, 4);
    const ComponentPartition permuted({{{3}, kEuclid}, {{0, 1}, kEuclid}, {{2}, k07}}, 4);

    Matrix translated = data, scaled = data;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 4; ++c)
            translated(r, c) += 3.25 * static_cast<double>(c + 1);
        scaled(r, 0) *= 7.5; // scale the whole first component
        scaled(r, 1) *= 7.5;
    }

    const std::vector<MeasureVariant> variants = {
        MeasureVariant::mcor_total,    MeasureVariant::mcor_lower,
        MeasureVariant::mcor_upper,    MeasureVariant::mcor_unnormalized,
        MeasureVariant::mcor_pairwise, MeasureVariant::multivariance_normalized};

    double worst = 0.0;
    for (EstimatorKind kind : {EstimatorKind::biased, EstimatorKind::bias_corrected}) {
        const MeasureEngine e0(data, base, kind);
        const MeasureEngine ep(data, permuted, kind);
        const MeasureEngine et(translated, base, kind);
        const MeasureEngine es(scaled, base, kind);
        for (MeasureVariant v : variants) {
            const double ref = e0.squared(v);
            worst = std::max(worst, std::fabs(ep.squared(v) - ref));
            worst = std::max(worst, std::fabs(et.squared(v) - ref));
            worst = std::max(worst, std::fabs(es.squared(v) - ref));
        }
    }
    const bool invariances_ok = worst <= 1e-9;

    // bit-exact copula invariance under strictly increasing maps
    Matrix mapped = data;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const double x = data(r, c);
            mapped(r, c) = x * x * x + 2.0 * x; // strictly increasing
        }
    const double cm_a =
        cmcor(data, base, EstimatorKind::bias_corrected, MeasureVariant::mcor_total, 77).value;
    const double cm_b =
        cmcor(mapped, base, EstimatorKind::bias_corrected, MeasureVariant::mcor_total, 77).value;
    const bool bitexact_ok = cm_a == cm_b;

    // reflection identity of the transform, untied and tied samples
    std::vector<double> untied(11), tied = {0.0, 0.0, 1.0, 2.0, 2.0, 2.0, 3.0};
    for (double& v : untied) v = normal_quantile(rng.uniform());
    std::vector<double> u1(untied.size()), u2(tied.size());
    for (double& v : u1) v = rng.uniform();
    for (double& v : u2) v = rng.uniform();
    const bool identity_ok =
        decreasing_transform_identity_check(untied, u1,
                                            [](double t) { return -2.0 * t + 1.0; }) &&
        decreasing_transform_identity_check(tied, u2, [](double t) { return 5.0 - t; });

    std::ostringstream ss;
    ss << "worst invariance deviation " << worst << " (<= 1e-9), copula bit-exact "
       << (bitexact_ok ? "yes" : "NO") << ", reflection identity "
       << (identity_ok ? "holds" : "FAILS");
    detail = ss.str();
    return invariances_ok && bitexact_ok && identity_ok;
}

// Centering identities on 100 random matrices; small-sample rejection.
bool criterion_10(std::string& detail) {
    Rng rng(0xACCE0A);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 4 + rng.below(37); // 4..40
        const std::size_t d = 1 + rng.below(3);
        Matrix samples(n, d);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < d; ++c) samples(r, c) = 5.0 * (rng.uniform() - 0.5);
        const double alpha = 0.3 + 1.5 * rng.uniform();
        const DistanceMatrix dist = distance_matrix(samples, KernelSpec::euclidean_power(alpha));

        double max_entry = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                max_entry = std::max(max_entry, std::fabs(dist.entries(j, k)));
        const double tol = 1e-9 * static_cast<double>(n) * std::max(1.0, max_entry);

        const CenteredMatrix biased = double_center(dist);
        const CenteredMatrix corrected = u_center(dist);
        for (std::size_t j = 0; j < n; ++j) {
            double row_b = 0.0, col_b = 0.0, row_u = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                row_b += biased.entries(j, k);
                col_b += biased.entries(k, j);
                row_u += corrected.entries(j, k);
            }
            worst = std::max({worst, std::fabs(row_b) / tol, std::fabs(col_b) / tol,
                              std::fabs(row_u) / tol});
        }
    }

    bool rejects = false;
    try {
        Matrix three(3, 1);
        three(1, 0) = 1.0;
        three(2, 0) = 2.0;
        u_center(distance_matrix(three, kEuclid));
    } catch (const std::invalid_argument&) {
        rejects = true;
    }

    std::ostringstream ss;
    ss << "worst sum/tolerance ratio " << worst
       << " (<= 1), N <= 3 rejected: " << (rejects ? "yes" : "NO");
    detail = ss.str();
    return worst <= 1.0 && rejects;
}

// With fixed constants the bias-corrected numerator is unbiased at n = 2 and
// has larger variance than the biased numerator at N = 10.
bool criterion_11(std::string& detail) {
    const int reps = 2000;
    const std::size_t n = 10;
    std::vector<double> corrected(reps), biased(reps);
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(stream_seed(0xACCE0B, rep));
        const Matrix x = columns_to_matrix({normal_column(n, rng)});
        const Matrix y = columns_to_matrix({normal_column(n, rng)});
        const DistanceMatrix dx = distance_matrix(x, kEuclid);
        const DistanceMatrix dy = distance_matrix(y, kEuclid);

        const CenteredMatrix ux = u_center(dx), uy = u_center(dy);
        const CenteredMatrix bx = double_center(dx), by = double_center(dy);
        const std::vector<double> unit = {1.0, 1.0};
        corrected[rep] = mcor_squared_m({&ux, &uy}, unit);
        biased[rep] = mcor_squared_m({&bx, &by}, unit);
    }

    auto mean_of = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / v.size();
    };
    auto var_of = [&](const std::vector<double>& v, double m) {
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / (v.size() - 1);
    };
    const double mc = mean_of(corrected), mb = mean_of(biased);
    const double vc = var_of(corrected, mc), vb = var_of(biased, mb);
    const double se = std::sqrt(vc / reps);

    std::ostringstream ss;
    ss << "bias-corrected numerator mean " << mc << " (|mean| <= 4 SE = " << 4.0 * se
       << "), variance " << vc << " > biased variance " << vb;
    detail = ss.str();
    return std::fabs(mc) <= 4.0 * se && vc > vb;
}

struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::string&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "oracle equivalence of every variant and estimator kind", criterion_1},
    {2, "marginal-table means and ordering (rho 0.8, bias corrected)", criterion_2},
    {3, "copula-measure table: distribution-free continuous values", criterion_3},
    {4, "within-margin dependence lowers the measure", criterion_4},
    {5, "marginal dominance counts and copula correction", criterion_5},
    {6, "alpha near 2 approaches |pearson|", criterion_6},
    {7, "unit expectation of the scaled multivariance statistic", criterion_7},
    {8, "higher-order dependence discrimination on the Bernoulli triple", criterion_8},
    {9, "permutation/translation/scaling invariances and transform identities", criterion_9},
    {10, "centering identities and small-sample rejection", criterion_10},
    {11, "unbiasedness and variance of the fixed-constant numerator", criterion_11},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d: %s  %s (%s) [%.1fs]\n", c.id, ok ? "PASS" : "FAIL", c.title,
                    detail.c_str(), seconds);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
