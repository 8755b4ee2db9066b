#include "mcor/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace mcor {

KernelSpec KernelSpec::euclidean_power(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::invalid_argument("kernel exponent must lie strictly in (0, 2), got " +
                                    std::to_string(alpha));
    return KernelSpec{KernelFamily::euclidean_power, alpha};
}

ComponentPartition::ComponentPartition(std::vector<ComponentSpec> components,
                                       std::size_t dataset_cols)
    : components_(std::move(components)), dataset_cols_(dataset_cols) {
    std::vector<char> seen(dataset_cols, 0);
    for (const auto& comp : components_) {
        if (comp.columns.empty()) throw std::invalid_argument("empty component in partition");
        for (std::size_t c : comp.columns) {
            if (c >= dataset_cols)
                throw std::invalid_argument("partition references column " + std::to_string(c) +
                                            " outside dataset with " +
                                            std::to_string(dataset_cols) + " columns");
            if (seen[c])
                throw std::invalid_argument("column " + std::to_string(c) +
                                            " assigned to more than one component");
            seen[c] = 1;
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; }))
        throw std::invalid_argument("partition does not cover all dataset columns");
}

ComponentPartition ComponentPartition::univariate(std::size_t n_cols, KernelSpec kernel) {
    std::vector<ComponentSpec> comps(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) comps[c] = ComponentSpec{{c}, kernel};
    return ComponentPartition(std::move(comps), n_cols);
}

namespace {

inline double sq_dist(const double* x, const double* y, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double diff = x[i] - y[i];
        s += diff * diff;
    }
    return s;
}

inline double psi_from_sq(double sq, double alpha) {
    if (alpha == 1.0) return std::sqrt(sq);
    return std::pow(sq, 0.5 * alpha);
}

} // namespace

double psi_eval(const KernelSpec& kernel, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("psi_eval: dimension mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    return psi_from_sq(sq_dist(x.data(), y.data(), x.size()), kernel.alpha);
}

DistanceMatrix distance_matrix(const Matrix& samples, const KernelSpec& kernel) {
    const std::size_t n = samples.rows();
    const std::size_t d = samples.cols();
    if (n < 2) throw std::invalid_argument("distance_matrix requires at least 2 samples");

    Matrix out = Matrix::square(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double* xj = samples.data() + j * d;
        double* row = out.data() + j * n;
        for (std::size_t k = j + 1; k < n; ++k) {
            row[k] = psi_from_sq(sq_dist(xj, samples.data() + k * d, d), kernel.alpha);
        }
    }
    // mirror the strict upper triangle; diagonal stays exactly zero
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) out(k, j) = out(j, k);
    return DistanceMatrix{std::move(out), kernel};
}

Matrix component_data(const Matrix& data, const ComponentSpec& comp) {
    Matrix out(data.rows(), comp.columns.size());
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < comp.columns.size(); ++c)
            out(r, c) = data(r, comp.columns[c]);
    return out;
}

} // namespace mcor
