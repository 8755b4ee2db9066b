#pragma once

#include "mcor/centering.hpp"
#include "mcor/kernels.hpp"
#include "mcor/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mcor {

// The norming-constant rule distinguishes the variants:
//   mcor_total              per-order constant (mean |A|^m)^(1/m), range [0,1]
//   mcor_lower              order-2 constant, lower bound, range [0,1]
//   mcor_upper              order-n constant, upper bound, range [0,inf)
//   mcor_unnormalized       signed self-multivariance constant, range [0,inf)
//   mcor_pairwise           order-2 terms over all pairs only, range [0,1]
//   multivariance_normalized  constant = mean psi-distance; N * squared is the
//                             test statistic with unit expectation under
//                             independence
enum class MeasureVariant {
    mcor_total,
    mcor_lower,
    mcor_upper,
    mcor_unnormalized,
    mcor_pairwise,
    multivariance_normalized,
};

const char* to_string(MeasureVariant v);
MeasureVariant parse_variant(const std::string& name);

struct MeasureResult {
    MeasureVariant variant;
    EstimatorKind estimator;
    double value;         // sign-preserving root of squared_value
    double squared_value; // may be negative for bias-corrected estimates
    std::size_t n_components;
    std::size_t sample_size;
    // N * squared_value; set for multivariance_normalized only
    std::optional<double> statistic;
};

struct MeasureOptions {
    // Subset enumeration for mcor_total / mcor_unnormalized grows as 2^n;
    // above this component count those variants refuse to run.
    std::size_t max_enumeration_components = 14;
};

double sign_preserving_sqrt(double x);

// Empirical Pearson correlation, clamped to [-1, 1]. Throws degenerate_error
// on constant input.
double pearson_cor(std::span<const double> x, std::span<const double> y);

// Empirical norming constant of one centered matrix for the given variant,
// at order m (m is used by mcor_total / mcor_unnormalized; mcor_upper passes
// the component count as m). Throws degenerate_error when the estimate is
// not strictly positive.
double norming_constant(const CenteredMatrix& a, int m, MeasureVariant variant);

// Constant for multivariance_normalized: grand mean of the raw distances.
double psi_grand_mean(const DistanceMatrix& d);

// Estimator of the squared m-tuple multicorrelation: mean over (j,k) of
// prod_l [-A_l[j][k] / c_l], with the biased mean 1/N^2 over all entries or
// the bias-corrected mean 1/(N(N-3)) over off-diagonal entries. All matrices
// must share N and estimator kind; constants must be strictly positive.
double mcor_squared_m(const std::vector<const CenteredMatrix*>& components,
                      std::span<const double> constants);

// Shared precomputation (distance matrices, centering, cached constants) for
// all variants on one dataset. Matrices are immutable after construction;
// constant caches fill lazily, so share across threads only after priming.
class MeasureEngine {
public:
    MeasureEngine(const Matrix& data, const ComponentPartition& partition, EstimatorKind kind,
                  MeasureOptions opts = {});

    std::size_t sample_size() const { return n_samples_; }
    std::size_t n_components() const { return centered_.size(); }
    EstimatorKind kind() const { return kind_; }
    const Matrix& centered(std::size_t i) const { return centered_[i]; }

    double squared(MeasureVariant v) const;
    MeasureResult result(MeasureVariant v) const;

    // Same estimator evaluated on substituted centered matrices (row/column
    // permutations of the originals). Norming constants are permutation
    // invariant and are reused from this engine's data.
    double squared_under(MeasureVariant v, const std::vector<const Matrix*>& mats) const;

private:
    double entry_mean(double total) const;
    double abs_pow_mean(std::size_t i, int m) const;
    double neg_pow_mean(std::size_t i, int m) const;
    double constant(std::size_t i, int m, MeasureVariant v) const;
    double subset_form(MeasureVariant v, const std::vector<const Matrix*>& mats) const;
    double pairwise_form(const std::vector<const Matrix*>& mats) const;
    double product_form(MeasureVariant v, const std::vector<const Matrix*>& mats) const;
    std::vector<const Matrix*> own_mats() const;

    std::size_t n_samples_ = 0;
    EstimatorKind kind_;
    MeasureOptions opts_;
    std::vector<Matrix> centered_;
    std::vector<double> psi_mean_; // grand mean of each raw distance matrix
    // lazy caches indexed [component][order]
    mutable std::vector<std::vector<double>> abs_mean_cache_;
    mutable std::vector<std::vector<double>> neg_mean_cache_;
};

MeasureResult total_mcor(const Matrix& data, const ComponentPartition& partition,
                         EstimatorKind kind, const MeasureOptions& opts = {});
MeasureResult total_mcor_bound(const Matrix& data, const ComponentPartition& partition,
                               EstimatorKind kind, MeasureVariant which,
                               const MeasureOptions& opts = {});
MeasureResult mcor_pairwise(const Matrix& data, const ComponentPartition& partition,
                            EstimatorKind kind, const MeasureOptions& opts = {});
MeasureResult mcor_unnormalized(const Matrix& data, const ComponentPartition& partition,
                                EstimatorKind kind, const MeasureOptions& opts = {});
MeasureResult total_multivariance_normalized(const Matrix& data,
                                             const ComponentPartition& partition,
                                             EstimatorKind kind, const MeasureOptions& opts = {});
MeasureResult compute_measure(const Matrix& data, const ComponentPartition& partition,
                              MeasureVariant variant, EstimatorKind kind,
                              const MeasureOptions& opts = {});

// Total multicorrelation with kernel exponent alpha on two univariate
// samples, next to |pearson_cor|; the two approach each other as alpha
// approaches 2.
std::pair<double, double> mcor_alpha_limit_check(std::span<const double> x,
                                                 std::span<const double> y, double alpha,
                                                 EstimatorKind kind);

} // namespace mcor
