#include "mcor/measures.hpp"

#include "mcor/simd.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <cmath>

namespace mcor {

const char* to_string(MeasureVariant v) {
    switch (v) {
        case MeasureVariant::mcor_total: return "mcor-total";
        case MeasureVariant::mcor_lower: return "mcor-lower";
        case MeasureVariant::mcor_upper: return "mcor-upper";
        case MeasureVariant::mcor_unnormalized: return "mcor-unnormalized";
        case MeasureVariant::mcor_pairwise: return "mcor-pairwise";
        case MeasureVariant::multivariance_normalized: return "multivariance-normalized";
    }
    return "?";
}

MeasureVariant parse_variant(const std::string& name) {
    for (MeasureVariant v :
         {MeasureVariant::mcor_total, MeasureVariant::mcor_lower, MeasureVariant::mcor_upper,
          MeasureVariant::mcor_unnormalized, MeasureVariant::mcor_pairwise,
          MeasureVariant::multivariance_normalized})
        if (name == to_string(v)) return v;
    throw std::invalid_argument("unknown measure variant: " + name);
}

double sign_preserving_sqrt(double x) {
    return x < 0.0 ? -std::sqrt(-x) : std::sqrt(x);
}

double pearson_cor(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size()) throw std::invalid_argument("pearson_cor: length mismatch");
    if (n < 2) throw std::invalid_argument("pearson_cor requires at least 2 samples");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw degenerate_error("zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// Mean of f(entries) with the estimator's convention: biased averages over
// all N^2 entries, bias-corrected over the N(N-3) off-diagonal slots. Both
// centered kinds have exactly zero diagonals where it matters, so sums can
// run over the full flat array.
double mean_denominator(std::size_t n, EstimatorKind kind) {
    return kind == EstimatorKind::biased
               ? static_cast<double>(n) * static_cast<double>(n)
               : static_cast<double>(n) * static_cast<double>(n - 3);
}

double checked_constant(double c, const char* what) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw degenerate_error(std::string("degenerate norming constant (") + what + ")");
    return c;
}

double subsets_normalizer(std::size_t n) {
    return std::ldexp(1.0, static_cast<int>(n)) - static_cast<double>(n) - 1.0;
}

} // namespace

double norming_constant(const CenteredMatrix& a, int m, MeasureVariant variant) {
    if (m < 2) throw std::invalid_argument("norming_constant: order must be >= 2");
    const std::size_t n = a.sample_size();
    const double denom = mean_denominator(n, a.kind);
    const auto& k = simd::ops();
    const double* p = a.entries.data();
    const std::size_t len = a.entries.size();

    switch (variant) {
        case MeasureVariant::mcor_total:
        case MeasureVariant::mcor_upper: {
            const double mean = k.abs_pow_sum(p, len, m) / denom;
            return checked_constant(std::pow(mean, 1.0 / m), to_string(variant));
        }
        case MeasureVariant::mcor_lower:
        case MeasureVariant::mcor_pairwise: {
            const double mean = k.abs_pow_sum(p, len, 2) / denom;
            return checked_constant(std::sqrt(mean), to_string(variant));
        }
        case MeasureVariant::mcor_unnormalized: {
            // empirical self-multivariance: mean of (-A)^m
            double mean = k.pow_sum(p, len, m) / denom;
            if (m % 2 != 0) mean = -mean;
            return checked_constant(std::pow(mean, 1.0 / m), to_string(variant));
        }
        case MeasureVariant::multivariance_normalized:
            throw std::invalid_argument(
                "multivariance constant is computed from the raw distance matrix; use "
                "psi_grand_mean");
    }
    throw std::invalid_argument("norming_constant: unknown variant");
}

double psi_grand_mean(const DistanceMatrix& d) {
    const std::size_t n = d.sample_size();
    const double mean = simd::ops().sum(d.entries.data(), d.entries.size()) /
                        (static_cast<double>(n) * static_cast<double>(n));
    return checked_constant(mean, "multivariance-normalized");
}

double mcor_squared_m(const std::vector<const CenteredMatrix*>& components,
                      std::span<const double> constants) {
    const std::size_t m = components.size();
    if (m < 2) throw std::invalid_argument("mcor_squared_m requires at least 2 components");
    if (constants.size() != m)
        throw std::invalid_argument("mcor_squared_m: one constant per component required");

    const std::size_t n = components[0]->sample_size();
    const EstimatorKind kind = components[0]->kind;
    std::vector<const double*> arrays(m);
    std::vector<double> scales(m);
    for (std::size_t l = 0; l < m; ++l) {
        if (components[l]->sample_size() != n)
            throw std::invalid_argument("mcor_squared_m: sample size mismatch");
        if (components[l]->kind != kind)
            throw std::invalid_argument("mcor_squared_m: mixed estimator kinds");
        if (!(constants[l] > 0.0))
            throw degenerate_error("degenerate norming constant (mcor_squared_m)");
        arrays[l] = components[l]->entries.data();
        scales[l] = -1.0 / constants[l];
    }
    const double total = simd::ops().scaled_product_sum(arrays.data(), scales.data(), m, n * n);
    return total / mean_denominator(n, kind);
}

MeasureEngine::MeasureEngine(const Matrix& data, const ComponentPartition& partition,
                             EstimatorKind kind, MeasureOptions opts)
    : n_samples_(data.rows()), kind_(kind), opts_(opts) {
    if (partition.dataset_cols() != data.cols())
        throw std::invalid_argument("partition does not match dataset column count");
    if (partition.size() < 2)
        throw std::invalid_argument("multicorrelation requires at least 2 components");
    if (n_samples_ < 2) throw std::invalid_argument("at least 2 samples required");
    if (kind_ == EstimatorKind::bias_corrected && n_samples_ <= 3)
        throw std::invalid_argument("bias correction requires more than 3 samples");

    centered_.reserve(partition.size());
    psi_mean_.reserve(partition.size());
    for (const auto& comp : partition.components()) {
        DistanceMatrix d = distance_matrix(component_data(data, comp), comp.kernel);
        psi_mean_.push_back(simd::ops().sum(d.entries.data(), d.entries.size()) /
                            (static_cast<double>(n_samples_) * static_cast<double>(n_samples_)));
        centered_.push_back(center(d, kind_).entries);
    }
    abs_mean_cache_.assign(centered_.size(), {});
    neg_mean_cache_.assign(centered_.size(), {});
}

double MeasureEngine::entry_mean(double total) const {
    return total / mean_denominator(n_samples_, kind_);
}

double MeasureEngine::abs_pow_mean(std::size_t i, int m) const {
    auto& cache = abs_mean_cache_[i];
    if (cache.size() <= static_cast<std::size_t>(m)) cache.resize(m + 1, -1.0);
    if (cache[m] < 0.0)
        cache[m] = entry_mean(simd::ops().abs_pow_sum(centered_[i].data(), centered_[i].size(), m));
    return cache[m];
}

double MeasureEngine::neg_pow_mean(std::size_t i, int m) const {
    auto& cache = neg_mean_cache_[i];
    if (cache.size() <= static_cast<std::size_t>(m))
        cache.resize(m + 1, std::numeric_limits<double>::quiet_NaN());
    if (std::isnan(cache[m])) {
        double mean = entry_mean(simd::ops().pow_sum(centered_[i].data(), centered_[i].size(), m));
        cache[m] = (m % 2 != 0) ? -mean : mean;
    }
    return cache[m];
}

double MeasureEngine::constant(std::size_t i, int m, MeasureVariant v) const {
    switch (v) {
        case MeasureVariant::mcor_total:
            return checked_constant(std::pow(abs_pow_mean(i, m), 1.0 / m), "mcor-total");
        case MeasureVariant::mcor_lower:
        case MeasureVariant::mcor_pairwise:
            return checked_constant(std::sqrt(abs_pow_mean(i, 2)), to_string(v));
        case MeasureVariant::mcor_upper: {
            const int order = static_cast<int>(n_components());
            return checked_constant(std::pow(abs_pow_mean(i, order), 1.0 / order), "mcor-upper");
        }
        case MeasureVariant::mcor_unnormalized:
            return checked_constant(std::pow(neg_pow_mean(i, m), 1.0 / m), "mcor-unnormalized");
        case MeasureVariant::multivariance_normalized:
            return checked_constant(psi_mean_[i], "multivariance-normalized");
    }
    throw std::invalid_argument("unknown variant");
}

std::vector<const Matrix*> MeasureEngine::own_mats() const {
    std::vector<const Matrix*> mats(centered_.size());
    for (std::size_t i = 0; i < centered_.size(); ++i) mats[i] = &centered_[i];
    return mats;
}

// Average of the squared m-tuple estimators over all subsets of size >= 2,
// with per-order constants (mcor_total / mcor_unnormalized).
double MeasureEngine::subset_form(MeasureVariant v, const std::vector<const Matrix*>& mats) const {
    const std::size_t n = n_components();
    if (n > opts_.max_enumeration_components)
        throw std::invalid_argument(
            "subset enumeration over " + std::to_string(n) + " components exceeds the cap (" +
            std::to_string(opts_.max_enumeration_components) +
            "); use the lower/upper bound variants for large component counts");

    const std::size_t len = n_samples_ * n_samples_;
    std::vector<const double*> arrays(n);
    std::vector<double> scales(n);
    double acc = 0.0;
    const std::uint32_t full = (1u << n);
    for (std::uint32_t mask = 3; mask < full; ++mask) {
        const int m = std::popcount(mask);
        if (m < 2) continue;
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                arrays[k] = mats[i]->data();
                scales[k] = -1.0 / constant(i, m, v);
                ++k;
            }
        }
        acc += entry_mean(simd::ops().scaled_product_sum(arrays.data(), scales.data(), k, len));
    }
    return acc / subsets_normalizer(n);
}

// Average of the order-2 estimators over all pairs, normalized by the number
// of pairs so the biased version keeps range [0, 1].
double MeasureEngine::pairwise_form(const std::vector<const Matrix*>& mats) const {
    const std::size_t n = n_components();
    const std::size_t len = n_samples_ * n_samples_;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* arrays[2] = {mats[i]->data(), mats[j]->data()};
            const double scales[2] = {-1.0 / constant(i, 2, MeasureVariant::mcor_pairwise),
                                      -1.0 / constant(j, 2, MeasureVariant::mcor_pairwise)};
            acc += entry_mean(simd::ops().scaled_product_sum(arrays, scales, 2, len));
        }
    }
    return acc / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

// Combined estimator: mean over (j,k) of prod_i (1 - A_i[j][k]/c_i) expands
// to the empty set plus vanishing singletons plus every subset term, so
// subtracting the empty-set contribution leaves the subset sum. For the
// bias-corrected mean over off-diagonal entries that contribution is
// (N-1)/(N-3), not 1; subtracting the exact value keeps the product form
// equal to the subset enumeration for both estimator kinds.
double MeasureEngine::product_form(MeasureVariant v, const std::vector<const Matrix*>& mats) const {
    const std::size_t n = n_components();
    const std::size_t len = n_samples_ * n_samples_;
    std::vector<const double*> arrays(n);
    std::vector<double> scales(n);
    for (std::size_t i = 0; i < n; ++i) {
        arrays[i] = mats[i]->data();
        scales[i] = -1.0 / constant(i, 0, v);
    }
    double total = simd::ops().affine_product_sum(arrays.data(), scales.data(), n, len);
    double mean, empty_term;
    if (kind_ == EstimatorKind::biased) {
        mean = total / (static_cast<double>(n_samples_) * static_cast<double>(n_samples_));
        empty_term = 1.0;
    } else {
        // U-centered diagonals are exactly zero, so each of the N diagonal
        // products is exactly 1.
        mean = (total - static_cast<double>(n_samples_)) / mean_denominator(n_samples_, kind_);
        empty_term = static_cast<double>(n_samples_ - 1) / static_cast<double>(n_samples_ - 3);
    }
    return (mean - empty_term) / subsets_normalizer(n);
}

double MeasureEngine::squared_under(MeasureVariant v, const std::vector<const Matrix*>& mats) const {
    switch (v) {
        case MeasureVariant::mcor_total:
        case MeasureVariant::mcor_unnormalized: return subset_form(v, mats);
        case MeasureVariant::mcor_pairwise: return pairwise_form(mats);
        case MeasureVariant::mcor_lower:
        case MeasureVariant::mcor_upper:
        case MeasureVariant::multivariance_normalized: return product_form(v, mats);
    }
    throw std::invalid_argument("unknown variant");
}

double MeasureEngine::squared(MeasureVariant v) const { return squared_under(v, own_mats()); }

MeasureResult MeasureEngine::result(MeasureVariant v) const {
    const double sq = squared(v);
    MeasureResult r{v,  kind_, sign_preserving_sqrt(sq), sq, n_components(), n_samples_,
                    {}};
    if (v == MeasureVariant::multivariance_normalized)
        r.statistic = static_cast<double>(n_samples_) * sq;
    return r;
}

MeasureResult compute_measure(const Matrix& data, const ComponentPartition& partition,
                              MeasureVariant variant, EstimatorKind kind,
                              const MeasureOptions& opts) {
    return MeasureEngine(data, partition, kind, opts).result(variant);
}

MeasureResult total_mcor(const Matrix& data, const ComponentPartition& partition,
                         EstimatorKind kind, const MeasureOptions& opts) {
    return compute_measure(data, partition, MeasureVariant::mcor_total, kind, opts);
}

MeasureResult total_mcor_bound(const Matrix& data, const ComponentPartition& partition,
                               EstimatorKind kind, MeasureVariant which,
                               const MeasureOptions& opts) {
    if (which != MeasureVariant::mcor_lower && which != MeasureVariant::mcor_upper)
        throw std::invalid_argument("total_mcor_bound expects mcor-lower or mcor-upper");
    return compute_measure(data, partition, which, kind, opts);
}

MeasureResult mcor_pairwise(const Matrix& data, const ComponentPartition& partition,
                            EstimatorKind kind, const MeasureOptions& opts) {
    return compute_measure(data, partition, MeasureVariant::mcor_pairwise, kind, opts);
}

MeasureResult mcor_unnormalized(const Matrix& data, const ComponentPartition& partition,
                                EstimatorKind kind, const MeasureOptions& opts) {
    return compute_measure(data, partition, MeasureVariant::mcor_unnormalized, kind, opts);
}

MeasureResult total_multivariance_normalized(const Matrix& data,
                                             const ComponentPartition& partition,
                                             EstimatorKind kind, const MeasureOptions& opts) {
    return compute_measure(data, partition, MeasureVariant::multivariance_normalized, kind, opts);
}

std::pair<double, double> mcor_alpha_limit_check(std::span<const double> x,
                                                 std::span<const double> y, double alpha,
                                                 EstimatorKind kind) {
    if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
    Matrix data(x.size(), 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        data(i, 0) = x[i];
        data(i, 1) = y[i];
    }
    const auto partition =
        ComponentPartition::univariate(2, KernelSpec::euclidean_power(alpha));
    const MeasureResult r = total_mcor(data, partition, kind);
    return {r.value, std::fabs(pearson_cor(x, y))};
}

} // namespace mcor
