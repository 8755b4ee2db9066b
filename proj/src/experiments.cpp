#include "mcor/experiments.hpp"

#include "mcor/copula.hpp"
#include "mcor/csv.hpp"
#include "mcor/harness.hpp"
#include "mcor/rng.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace mcor {

using nlohmann::json;

const std::vector<std::string> kExperimentNames = {
    "dominance",   "example-4.2",         "example-4.3",
    "example-5.4", "multivariate-curves", "bias-comparison",
};

namespace {

constexpr std::uint64_t kCaseTag = 0x657863617365ull;     // per-case data streams
constexpr std::uint64_t kTransformTag = 0x6578646177ull;  // per-case transform draws

const std::vector<MarginalPairSpec> kMarginalTablePairs = {
    {Marginal::norm, Marginal::norm},       {Marginal::unif, Marginal::unif},
    {Marginal::chi_sq, Marginal::chi_sq},   {Marginal::bern, Marginal::bern},
    {Marginal::exponential, Marginal::chi_sq}, {Marginal::norm, Marginal::chi_sq},
    {Marginal::unif, Marginal::chi_sq},     {Marginal::exponential, Marginal::bern},
    {Marginal::chi_sq, Marginal::bern},
};

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& v) {
    MeanSd r;
    for (double x : v) r.mean += x;
    r.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - r.mean) * (x - r.mean);
        r.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return r;
}

json base_config(const char* name, const ExperimentParams& p) {
    return json{{"experiment", name},
                {"cases", p.cases},
                {"n", p.n},
                {"estimator", to_string(p.estimator)},
                {"seed", p.seed}};
}

void write_report(const ExperimentParams& p, const std::string& name, const json& report,
                  const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
    if (p.out_dir.empty()) return;
    std::filesystem::create_directories(p.out_dir);
    write_table(p.out_dir / (name + ".csv"), header, rows);
    std::ofstream out(p.out_dir / (name + ".json"));
    out << report.dump(2) << '\n';
}

// Measure table over marginal pairs sharing one Gaussian copula sample per
// case; with `use_copula` the transform draws are also shared within a case,
// so marginal families that are increasing transforms of each other get
// identical values.
json marginal_table(const char* name, const ExperimentParams& p, bool use_copula) {
    const auto partition = ComponentPartition::univariate(2, KernelSpec::euclidean_power(1.0));
    const std::size_t np = kMarginalTablePairs.size();

    std::vector<std::vector<double>> values(np);
    Matrix data(p.n, 2);
    for (std::size_t c = 0; c < p.cases; ++c) {
        Rng rng(stream_seed(p.seed, kCaseTag, c));
        const Matrix u = sample_gaussian_copula(p.rho, p.n, rng);
        const std::uint64_t tseed = stream_seed(p.seed, kTransformTag, c);
        for (std::size_t ip = 0; ip < np; ++ip) {
            for (std::size_t r = 0; r < p.n; ++r) {
                data(r, 0) = marginal_quantile(kMarginalTablePairs[ip].x, u(r, 0));
                data(r, 1) = marginal_quantile(kMarginalTablePairs[ip].y, u(r, 1));
            }
            const double value =
                use_copula
                    ? cmcor(data, partition, p.estimator, p.variant, tseed).value
                    : compute_measure(data, partition, p.variant, p.estimator).value;
            values[ip].push_back(value);
        }
    }

    json report = base_config(name, p);
    report["rho"] = p.rho;
    report["variant"] = to_string(p.variant);
    report["copula"] = use_copula;
    json table = json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t ip = 0; ip < np; ++ip) {
        const MeanSd ms = mean_sd(values[ip]);
        const auto& pair = kMarginalTablePairs[ip];
        table.push_back(json{{"pair", pair.label()},
                             {"x", to_string(pair.x)},
                             {"y", to_string(pair.y)},
                             {"mean", ms.mean},
                             {"sd", ms.sd}});
        rows.push_back({pair.label(), to_string(pair.x), to_string(pair.y),
                        format_double(ms.mean), format_double(ms.sd)});
    }
    report["table"] = table;
    write_report(p, name, report, {"pair", "x_marginal", "y_marginal", "mean", "sd"}, rows);
    return report;
}

} // namespace

json run_marginal_table(const ExperimentParams& params) {
    return marginal_table("example-4.2", params, false);
}

json run_copula_marginal_table(const ExperimentParams& params) {
    return marginal_table("example-5.4", params, true);
}

json run_within_margin_table(const ExperimentParams& params) {
    const double s_grid[] = {0.0, 0.5, 1.0};
    json report = base_config("example-4.3", params);
    json table = json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t is = 0; is < 3; ++is) {
        std::vector<double> values;
        for (std::size_t c = 0; c < params.cases; ++c) {
            ScenarioConfig config{Scenario::within_margin, params.n, s_grid[is], 0.0, 0.0,
                                  Marginal::norm, Marginal::norm,
                                  stream_seed(params.seed, kCaseTag, is, c)};
            const ScenarioData sd = scenario_generate(config);
            values.push_back(
                compute_measure(sd.data, sd.partition, params.variant, params.estimator).value);
        }
        const MeanSd ms = mean_sd(values);
        table.push_back(json{{"s", s_grid[is]}, {"mean", ms.mean}, {"sd", ms.sd}});
        rows.push_back({format_double(s_grid[is]), format_double(ms.mean), format_double(ms.sd)});
    }
    report["table"] = table;
    write_report(params, "example-4.3", report, {"s", "mean", "sd"}, rows);
    return report;
}

json run_multivariate_curves(const ExperimentParams& params) {
    const Scenario scenarios[] = {Scenario::multivariate_normal, Scenario::interpolation,
                                  Scenario::perturbed_bernoulli};
    const MeasureVariant variants[] = {MeasureVariant::mcor_total, MeasureVariant::mcor_lower,
                                       MeasureVariant::mcor_upper,
                                       MeasureVariant::mcor_unnormalized,
                                       MeasureVariant::mcor_pairwise};
    json report = base_config("multivariate-curves", params);
    json table = json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t isc = 0; isc < 3; ++isc) {
        for (int step = 0; step <= 10; ++step) {
            const double s = 0.1 * step;
            std::vector<std::vector<double>> per_variant(5);
            for (std::size_t c = 0; c < params.cases; ++c) {
                ScenarioConfig config{scenarios[isc], params.n, s, 0.0, 0.0, Marginal::norm,
                                      Marginal::norm,
                                      stream_seed(params.seed, kCaseTag, isc * 100 + step, c)};
                const ScenarioData sd = scenario_generate(config);
                const MeasureEngine engine(sd.data, sd.partition, params.estimator);
                for (std::size_t iv = 0; iv < 5; ++iv) {
                    double value;
                    try {
                        value = engine.result(variants[iv]).value;
                    } catch (const degenerate_error&) {
                        // e.g. odd-order self-multivariance of a balanced
                        // Bernoulli column; the estimate does not exist
                        value = std::numeric_limits<double>::quiet_NaN();
                    }
                    per_variant[iv].push_back(value);
                }
            }
            for (std::size_t iv = 0; iv < 5; ++iv) {
                const MeanSd ms = mean_sd(per_variant[iv]);
                table.push_back(json{{"scenario", to_string(scenarios[isc])},
                                     {"s", s},
                                     {"variant", to_string(variants[iv])},
                                     {"mean", ms.mean},
                                     {"sd", ms.sd}});
                rows.push_back({to_string(scenarios[isc]), format_double(s),
                                to_string(variants[iv]), format_double(ms.mean),
                                format_double(ms.sd)});
            }
        }
    }
    report["table"] = table;
    write_report(params, "multivariate-curves", report, {"scenario", "s", "variant", "mean", "sd"},
                 rows);
    return report;
}

json run_bias_comparison(const ExperimentParams& params) {
    const std::size_t n_grid[] = {10, 20, 50, 100, 200, 500, 1000};
    const double rho_grid[] = {0.0, 0.5};
    const auto partition = ComponentPartition::univariate(2, KernelSpec::euclidean_power(1.0));

    json report = base_config("bias-comparison", params);
    std::vector<std::vector<std::string>> rows;
    json table = json::array();
    for (double rho : rho_grid) {
        const char* coupling = rho == 0.0 ? "independent" : "gauss-copula-0.5";
        for (std::size_t n : n_grid) {
            std::vector<double> biased_v, corrected_v;
            for (std::size_t c = 0; c < params.cases; ++c) {
                Rng rng(stream_seed(params.seed, kCaseTag,
                                    static_cast<std::uint64_t>(rho * 2) * 1000 + n, c));
                const Matrix u = sample_gaussian_copula(rho, n, rng);
                const MeasureResult biased =
                    compute_measure(u, partition, params.variant, EstimatorKind::biased);
                const MeasureResult corrected =
                    compute_measure(u, partition, params.variant, EstimatorKind::bias_corrected);
                biased_v.push_back(biased.value);
                corrected_v.push_back(corrected.value);
                rows.push_back({coupling, std::to_string(n), std::to_string(c), "biased",
                                format_double(biased.value)});
                rows.push_back({coupling, std::to_string(n), std::to_string(c), "bias-corrected",
                                format_double(corrected.value)});
            }
            const MeanSd mb = mean_sd(biased_v), mc = mean_sd(corrected_v);
            table.push_back(json{{"coupling", coupling},
                                 {"n", n},
                                 {"biased_mean", mb.mean},
                                 {"biased_sd", mb.sd},
                                 {"bias_corrected_mean", mc.mean},
                                 {"bias_corrected_sd", mc.sd}});
        }
    }
    report["table"] = table;
    write_report(params, "bias-comparison", report, {"coupling", "n", "case", "estimator", "value"},
                 rows);
    return report;
}

json dominance_report_json(const DominanceReport& report) {
    json cells = json::array();
    const std::size_t np = report.pairs.size();
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t b = 0; b < np; ++b) {
            if (a == b) continue;
            cells.push_back(json{{"row_pair", report.pairs[a].label()},
                                 {"col_pair", report.pairs[b].label()},
                                 {"count", static_cast<std::size_t>(report.counts(a, b))},
                                 {"ties", static_cast<std::size_t>(report.ties(a, b))},
                                 {"p", report.p_values(a, b)},
                                 {"p_holm", report.p_holm(a, b)},
                                 {"stars", report.stars[a][b]}});
        }
    }
    return json{{"cases", report.cases},
                {"rho", report.rho},
                {"n", report.sample_size},
                {"estimator", to_string(report.estimator)},
                {"copula", report.copula_version},
                {"seed", report.seed},
                {"cells", cells}};
}

json run_dominance(const ExperimentParams& params) {
    std::vector<MarginalPairSpec> pairs = params.pairs;
    if (pairs.empty())
        pairs = {{Marginal::norm, Marginal::norm},
                 {Marginal::unif, Marginal::unif},
                 {Marginal::exponential, Marginal::exponential},
                 {Marginal::chi_sq, Marginal::chi_sq}};

    const DominanceReport report =
        dominance_experiment(pairs, params.rho, params.cases, params.n, params.estimator,
                             params.copula, params.seed, params.variant);

    json out = base_config("dominance", params);
    out["rho"] = params.rho;
    out["variant"] = to_string(params.variant);
    out["copula"] = params.copula;
    out.update(dominance_report_json(report));

    std::vector<std::vector<std::string>> rows;
    const std::size_t np = pairs.size();
    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = 0; b < np; ++b) {
            if (a == b) continue;
            rows.push_back({pairs[a].label(), pairs[b].label(),
                            std::to_string(static_cast<std::size_t>(report.counts(a, b))),
                            std::to_string(static_cast<std::size_t>(report.ties(a, b))),
                            format_double(report.p_values(a, b)),
                            format_double(report.p_holm(a, b)), report.stars[a][b]});
        }
    write_report(params, "dominance", out,
                 {"row_pair", "col_pair", "count", "ties", "p", "p_holm", "stars"}, rows);
    return out;
}

json run_experiment(const std::string& name, const ExperimentParams& params) {
    if (name == "dominance") return run_dominance(params);
    if (name == "example-4.2") return run_marginal_table(params);
    if (name == "example-4.3") return run_within_margin_table(params);
    if (name == "example-5.4") return run_copula_marginal_table(params);
    if (name == "multivariate-curves") return run_multivariate_curves(params);
    if (name == "bias-comparison") return run_bias_comparison(params);
    throw std::invalid_argument("unknown experiment: " + name);
}

} // namespace mcor
