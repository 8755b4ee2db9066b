#include "mcor/simd.hpp"

#include <cmath>

// Reference kernels. Deliberately plain loops; the vector variants are
// checked against these in the test suite.

namespace mcor::simd {
namespace {

inline double powi(double x, int m) {
    double r = x;
    for (int i = 1; i < m; ++i) r *= x;
    return r;
}

double scaled_product_sum_scalar(const double* const* a, const double* scale, std::size_t k,
                                 std::size_t n) {
    double acc = 0.0;
    if (k == 2) {
        const double *a0 = a[0], *a1 = a[1];
        const double s0 = scale[0], s1 = scale[1];
        for (std::size_t j = 0; j < n; ++j) acc += (s0 * a0[j]) * (s1 * a1[j]);
        return acc;
    }
    if (k == 3) {
        const double *a0 = a[0], *a1 = a[1], *a2 = a[2];
        const double s0 = scale[0], s1 = scale[1], s2 = scale[2];
        for (std::size_t j = 0; j < n; ++j) acc += (s0 * a0[j]) * (s1 * a1[j]) * (s2 * a2[j]);
        return acc;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double p = scale[0] * a[0][j];
        for (std::size_t l = 1; l < k; ++l) p *= scale[l] * a[l][j];
        acc += p;
    }
    return acc;
}

double affine_product_sum_scalar(const double* const* a, const double* scale, std::size_t k,
                                 std::size_t n) {
    double acc = 0.0;
    if (k == 2) {
        const double *a0 = a[0], *a1 = a[1];
        const double s0 = scale[0], s1 = scale[1];
        for (std::size_t j = 0; j < n; ++j) acc += (1.0 + s0 * a0[j]) * (1.0 + s1 * a1[j]);
        return acc;
    }
    if (k == 3) {
        const double *a0 = a[0], *a1 = a[1], *a2 = a[2];
        const double s0 = scale[0], s1 = scale[1], s2 = scale[2];
        for (std::size_t j = 0; j < n; ++j)
            acc += (1.0 + s0 * a0[j]) * (1.0 + s1 * a1[j]) * (1.0 + s2 * a2[j]);
        return acc;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double p = 1.0 + scale[0] * a[0][j];
        for (std::size_t l = 1; l < k; ++l) p *= 1.0 + scale[l] * a[l][j];
        acc += p;
    }
    return acc;
}

double abs_pow_sum_scalar(const double* a, std::size_t n, int m) {
    double acc = 0.0;
    if (m == 1) {
        for (std::size_t j = 0; j < n; ++j) acc += std::fabs(a[j]);
    } else if (m == 2) {
        for (std::size_t j = 0; j < n; ++j) acc += a[j] * a[j];
    } else {
        for (std::size_t j = 0; j < n; ++j) acc += powi(std::fabs(a[j]), m);
    }
    return acc;
}

double pow_sum_scalar(const double* a, std::size_t n, int m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += powi(a[j], m);
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[j];
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
    return acc;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{scaled_product_sum_scalar, affine_product_sum_scalar,
                         abs_pow_sum_scalar,        pow_sum_scalar,
                         sum_scalar,                dot_scalar,
                         "scalar"};
    return ops;
}

} // namespace mcor::simd
