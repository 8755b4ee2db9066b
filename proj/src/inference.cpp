#include "mcor/inference.hpp"

#include "mcor/copula.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcor {

const char* to_string(TestMethod m) {
    return m == TestMethod::permutation ? "permutation" : "conservative-bound";
}

std::vector<std::uint32_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t j = n - 1; j > 0; --j)
        std::swap(perm[j], perm[rng.below(j + 1)]);
    return perm;
}

namespace {

constexpr std::uint64_t kPermutationTag = 0x7065726d75746573ull;

void permute_square(const Matrix& src, const std::vector<std::uint32_t>& perm, Matrix& dst) {
    const std::size_t n = src.rows();
    for (std::size_t j = 0; j < n; ++j) {
        const double* row = src.data() + static_cast<std::size_t>(perm[j]) * n;
        double* out = dst.data() + j * n;
        for (std::size_t k = 0; k < n; ++k) out[k] = row[perm[k]];
    }
}

} // namespace

TestResult permutation_test(const Matrix& data, const ComponentPartition& partition,
                            MeasureVariant variant, EstimatorKind kind, std::size_t b,
                            std::uint64_t seed, const MeasureOptions& opts) {
    if (b < 99) throw std::invalid_argument("permutation_test requires at least 99 replicates");

    const MeasureEngine engine(data, partition, kind, opts);
    const std::size_t n = engine.sample_size();
    const std::size_t nc = engine.n_components();
    const double observed_sq = engine.squared(variant); // primes the constant caches

    std::vector<Matrix> scratch(nc - 1, Matrix::square(n));
    std::vector<const Matrix*> mats(nc);
    mats[0] = &engine.centered(0);
    for (std::size_t i = 1; i < nc; ++i) mats[i] = &scratch[i - 1];

    std::size_t exceed = 0;
    for (std::size_t rep = 0; rep < b; ++rep) {
        for (std::size_t i = 1; i < nc; ++i) {
            Rng rng(stream_seed(seed, kPermutationTag + rep, i));
            const auto perm = random_permutation(n, rng);
            permute_square(engine.centered(i), perm, scratch[i - 1]);
        }
        if (engine.squared_under(variant, mats) >= observed_sq) ++exceed;
    }

    const double p = static_cast<double>(1 + exceed) / static_cast<double>(b + 1);
    MeasureResult observed = engine.result(variant);
    return TestResult{observed.value, p, TestMethod::permutation, b, seed, observed};
}

double conservative_pvalue(double statistic) {
    if (!(statistic >= 0.0))
        throw std::invalid_argument("conservative bound requires the biased statistic");
    return statistic <= 1.0 ? 1.0 : 1.0 / statistic;
}

TestResult conservative_bound_test(const Matrix& data, const ComponentPartition& partition,
                                   const MeasureOptions& opts) {
    const MeasureResult r = total_multivariance_normalized(data, partition,
                                                           EstimatorKind::biased, opts);
    const double stat = r.statistic.value();
    return TestResult{stat, conservative_pvalue(stat), TestMethod::conservative_bound, 0, 0, r};
}

double binomial_two_sided_p(std::size_t k, std::size_t c) {
    if (k > c) throw std::invalid_argument("binomial_two_sided_p: k exceeds c");
    if (c == 0) return 1.0;

    const double log_half_pow = -static_cast<double>(c) * std::log(2.0);
    const double lg_c1 = std::lgamma(static_cast<double>(c) + 1.0);
    auto log_pmf = [&](std::size_t i) {
        return lg_c1 - std::lgamma(static_cast<double>(i) + 1.0) -
               std::lgamma(static_cast<double>(c - i) + 1.0) + log_half_pow;
    };

    const double threshold = log_pmf(k) + 1e-9;
    double p = 0.0;
    for (std::size_t i = 0; i <= c; ++i)
        if (log_pmf(i) <= threshold) p += std::exp(log_pmf(i));
    return std::min(1.0, p);
}

std::vector<double> holm_adjust(const std::vector<double>& p) {
    const std::size_t n = p.size();
    for (double v : p)
        if (!(v >= 0.0) || !(v <= 1.0))
            throw std::invalid_argument("holm_adjust: p-values must lie in [0, 1]");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

    std::vector<double> adjusted(n);
    double running = 0.0;
    for (std::size_t rank = 0; rank < n; ++rank) {
        const double scaled = static_cast<double>(n - rank) * p[order[rank]];
        running = std::max(running, scaled);
        adjusted[order[rank]] = std::min(1.0, running);
    }
    return adjusted;
}

std::string star_notation(double p_adjusted) {
    if (p_adjusted <= 1e-4) return "****";
    if (p_adjusted <= 1e-3) return "***";
    if (p_adjusted <= 0.01) return "**";
    if (p_adjusted <= 0.05) return "*";
    return "";
}

std::string MarginalPairSpec::label() const {
    return std::string(to_string(x)) + "/" + to_string(y);
}

namespace {
constexpr std::uint64_t kDominanceCaseTag = 0x646f6d63617365ull;
constexpr std::uint64_t kDominanceDrawTag = 0x646f6d64726177ull;
} // namespace

DominanceReport dominance_experiment(const std::vector<MarginalPairSpec>& pairs, double rho,
                                     std::size_t cases, std::size_t n, EstimatorKind kind,
                                     bool use_copula_version, std::uint64_t seed,
                                     MeasureVariant variant) {
    if (pairs.size() < 2)
        throw std::invalid_argument("dominance_experiment needs at least two marginal pairs");
    if (cases < 1) throw std::invalid_argument("dominance_experiment needs at least one case");

    const std::size_t np = pairs.size();
    const auto partition = ComponentPartition::univariate(2, KernelSpec::euclidean_power(1.0));

    // values[c][ip]: measure for marginal pair ip in case c, all pairs of one
    // case sharing a single Gaussian copula sample
    std::vector<std::vector<double>> values(cases, std::vector<double>(np));
    Matrix data(n, 2);
    for (std::size_t c = 0; c < cases; ++c) {
        Rng rng(stream_seed(seed, kDominanceCaseTag, c));
        const Matrix u = sample_gaussian_copula(rho, n, rng);
        for (std::size_t ip = 0; ip < np; ++ip) {
            for (std::size_t r = 0; r < n; ++r) {
                data(r, 0) = marginal_quantile(pairs[ip].x, u(r, 0));
                data(r, 1) = marginal_quantile(pairs[ip].y, u(r, 1));
            }
            if (use_copula_version) {
                // fresh transform draws per (case, pair); sharing them across
                // pairs would tie the transformed samples together
                const std::uint64_t tseed = stream_seed(seed, kDominanceDrawTag, c, ip);
                values[c][ip] = cmcor(data, partition, kind, variant, tseed).value;
            } else {
                values[c][ip] = compute_measure(data, partition, variant, kind).value;
            }
        }
    }

    DominanceReport report;
    report.pairs = pairs;
    report.cases = cases;
    report.rho = rho;
    report.sample_size = n;
    report.estimator = kind;
    report.copula_version = use_copula_version;
    report.seed = seed;
    report.counts = Matrix::square(np);
    report.ties = Matrix::square(np);
    report.p_values = Matrix(np, np, 1.0);
    report.p_holm = Matrix(np, np, 1.0);
    report.stars.assign(np, std::vector<std::string>(np));

    std::vector<double> upper_p;
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t b2 = a + 1; b2 < np; ++b2) {
            std::size_t wins_a = 0, wins_b = 0, ties = 0;
            for (std::size_t c = 0; c < cases; ++c) {
                if (values[c][a] > values[c][b2]) ++wins_a;
                else if (values[c][a] < values[c][b2]) ++wins_b;
                else ++ties;
            }
            report.counts(a, b2) = static_cast<double>(wins_a);
            report.counts(b2, a) = static_cast<double>(wins_b);
            report.ties(a, b2) = report.ties(b2, a) = static_cast<double>(ties);
            const std::size_t decided = wins_a + wins_b;
            const double p = decided == 0 ? 1.0 : binomial_two_sided_p(wins_a, decided);
            report.p_values(a, b2) = report.p_values(b2, a) = p;
            upper_p.push_back(p);
        }
    }

    const std::vector<double> adjusted = holm_adjust(upper_p);
    std::size_t idx = 0;
    for (std::size_t a = 0; a < np; ++a) {
        for (std::size_t b2 = a + 1; b2 < np; ++b2) {
            report.p_holm(a, b2) = report.p_holm(b2, a) = adjusted[idx];
            report.stars[a][b2] = report.stars[b2][a] = star_notation(adjusted[idx]);
            ++idx;
        }
    }
    return report;
}

} // namespace mcor
