#pragma once

#include "mcor/harness.hpp"
#include "mcor/measures.hpp"
#include "mcor/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcor {

enum class TestMethod { permutation, conservative_bound };

const char* to_string(TestMethod m);

struct TestResult {
    double statistic;
    double p_value;
    TestMethod method;
    std::size_t permutations; // 0 for the conservative bound
    std::uint64_t seed;       // 0 for the conservative bound
    MeasureResult observed;
};

// Uniform random permutation via Fisher-Yates on the given stream.
std::vector<std::uint32_t> random_permutation(std::size_t n, Rng& rng);

// Permutation independence test: components 2..n are independently
// row-permuted in each of the B replicates; p = (1 + #{replicate statistic
// >= observed}) / (B + 1). Deterministic given the seed.
TestResult permutation_test(const Matrix& data, const ComponentPartition& partition,
                            MeasureVariant variant, EstimatorKind kind, std::size_t b,
                            std::uint64_t seed, const MeasureOptions& opts = {});

// Markov bound on the normalized total multivariance statistic N * M^2
// (biased): p <= min(1, 1/statistic). Rejects negative statistics, which can
// only come from the bias-corrected estimator.
double conservative_pvalue(double statistic);

// Full conservative-bound test: biased normalized total multivariance.
TestResult conservative_bound_test(const Matrix& data, const ComponentPartition& partition,
                                   const MeasureOptions& opts = {});

// Exact two-sided binomial p-value for k successes out of c trials against
// success probability 1/2 (sum of all outcome probabilities not exceeding
// that of k).
double binomial_two_sided_p(std::size_t k, std::size_t c);

// Holm step-down adjustment, capped at 1, with monotonicity enforcement.
std::vector<double> holm_adjust(const std::vector<double>& p);

// "*" <= 0.05, "**" <= 0.01, "***" <= 0.001, "****" <= 0.0001.
std::string star_notation(double p_adjusted);

struct MarginalPairSpec {
    Marginal x;
    Marginal y;
    std::string label() const;
};

// Paired comparison of measure values across marginal configurations that
// share a Gaussian copula sample: counts how often one configuration's value
// exceeds another's over repeated cases. Exact ties are counted to neither
// side and excluded from the per-cell binomial test.
struct DominanceReport {
    std::vector<MarginalPairSpec> pairs;
    std::size_t cases = 0;
    double rho = 0.0;
    std::size_t sample_size = 0;
    EstimatorKind estimator = EstimatorKind::biased;
    bool copula_version = false;
    std::uint64_t seed = 0;
    Matrix counts;  // counts(a,b): cases where pair a's value > pair b's
    Matrix ties;    // symmetric
    Matrix p_values; // upper triangle; lower mirror
    Matrix p_holm;   // Holm over all upper-triangle cells jointly
    std::vector<std::vector<std::string>> stars;
};

DominanceReport dominance_experiment(const std::vector<MarginalPairSpec>& pairs, double rho,
                                     std::size_t cases, std::size_t n, EstimatorKind kind,
                                     bool use_copula_version, std::uint64_t seed,
                                     MeasureVariant variant = MeasureVariant::mcor_total);

} // namespace mcor
