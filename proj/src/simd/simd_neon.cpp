#include "simd_backends.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>
#include <cmath>

namespace mcor::simd {
namespace {

inline double powi(double x, int m) {
    double r = x;
    for (int i = 1; i < m; ++i) r *= x;
    return r;
}

double scaled_product_sum_neon(const double* const* a, const double* scale, std::size_t k,
                               std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t p = vmulq_n_f64(vld1q_f64(a[0] + j), scale[0]);
        for (std::size_t l = 1; l < k; ++l)
            p = vmulq_f64(p, vmulq_n_f64(vld1q_f64(a[l] + j), scale[l]));
        acc = vaddq_f64(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) {
        double p = scale[0] * a[0][j];
        for (std::size_t l = 1; l < k; ++l) p *= scale[l] * a[l][j];
        tail += p;
    }
    return vaddvq_f64(acc) + tail;
}

double affine_product_sum_neon(const double* const* a, const double* scale, std::size_t k,
                               std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t p = vfmaq_n_f64(one, vld1q_f64(a[0] + j), scale[0]);
        for (std::size_t l = 1; l < k; ++l)
            p = vmulq_f64(p, vfmaq_n_f64(one, vld1q_f64(a[l] + j), scale[l]));
        acc = vaddq_f64(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) {
        double p = 1.0 + scale[0] * a[0][j];
        for (std::size_t l = 1; l < k; ++l) p *= 1.0 + scale[l] * a[l][j];
        tail += p;
    }
    return vaddvq_f64(acc) + tail;
}

double abs_pow_sum_neon(const double* a, std::size_t n, int m) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t x = vld1q_f64(a + j);
        if (m != 2) x = vabsq_f64(x);
        float64x2_t p = x;
        for (int i = 1; i < m; ++i) p = vmulq_f64(p, x);
        acc = vaddq_f64(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) tail += (m == 2) ? a[j] * a[j] : powi(std::fabs(a[j]), m);
    return vaddvq_f64(acc) + tail;
}

double pow_sum_neon(const double* a, std::size_t n, int m) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        float64x2_t x = vld1q_f64(a + j);
        float64x2_t p = x;
        for (int i = 1; i < m; ++i) p = vmulq_f64(p, x);
        acc = vaddq_f64(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) tail += powi(a[j], m);
    return vaddvq_f64(acc) + tail;
}

double sum_neon(const double* a, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) acc = vaddq_f64(acc, vld1q_f64(a + j));
    double tail = 0.0;
    for (; j < n; ++j) tail += a[j];
    return vaddvq_f64(acc) + tail;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) acc = vfmaq_f64(acc, vld1q_f64(a + j), vld1q_f64(b + j));
    double tail = 0.0;
    for (; j < n; ++j) tail += a[j] * b[j];
    return vaddvq_f64(acc) + tail;
}

} // namespace

const Ops* neon_ops() {
    static const Ops ops{scaled_product_sum_neon, affine_product_sum_neon,
                         abs_pow_sum_neon,        pow_sum_neon,
                         sum_neon,                dot_neon,
                         "neon"};
    return &ops;
}

} // namespace mcor::simd

#else

namespace mcor::simd {
const Ops* neon_ops() { return nullptr; }
} // namespace mcor::simd

#endif
