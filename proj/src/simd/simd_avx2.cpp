#include "simd_backends.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <cmath>
#include <immintrin.h>

namespace mcor::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double powi(double x, int m) {
    double r = x;
    for (int i = 1; i < m; ++i) r *= x;
    return r;
}

double scaled_product_sum_avx2(const double* const* a, const double* scale, std::size_t k,
                               std::size_t n) {
    std::size_t j = 0;
    __m256d acc = _mm256_setzero_pd();
    if (k == 2) {
        const double *a0 = a[0], *a1 = a[1];
        const __m256d s = _mm256_set1_pd(scale[0] * scale[1]);
        for (; j + 4 <= n; j += 4) {
            __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a0 + j), _mm256_loadu_pd(a1 + j));
            acc = _mm256_fmadd_pd(s, p, acc);
        }
        double tail = 0.0;
        for (; j < n; ++j) tail += (scale[0] * a0[j]) * (scale[1] * a1[j]);
        return hsum(acc) + tail;
    }
    if (k == 3) {
        const double *a0 = a[0], *a1 = a[1], *a2 = a[2];
        const __m256d s = _mm256_set1_pd(scale[0] * scale[1] * scale[2]);
        for (; j + 4 <= n; j += 4) {
            __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a0 + j), _mm256_loadu_pd(a1 + j));
            p = _mm256_mul_pd(p, _mm256_loadu_pd(a2 + j));
            acc = _mm256_fmadd_pd(s, p, acc);
        }
        double tail = 0.0;
        for (; j < n; ++j) tail += (scale[0] * a0[j]) * ((scale[1] * a1[j]) * (scale[2] * a2[j]));
        return hsum(acc) + tail;
    }
    for (; j + 4 <= n; j += 4) {
        __m256d p = _mm256_mul_pd(_mm256_set1_pd(scale[0]), _mm256_loadu_pd(a[0] + j));
        for (std::size_t l = 1; l < k; ++l)
            p = _mm256_mul_pd(p, _mm256_mul_pd(_mm256_set1_pd(scale[l]), _mm256_loadu_pd(a[l] + j)));
        acc = _mm256_add_pd(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) {
        double p = scale[0] * a[0][j];
        for (std::size_t l = 1; l < k; ++l) p *= scale[l] * a[l][j];
        tail += p;
    }
    return hsum(acc) + tail;
}

double affine_product_sum_avx2(const double* const* a, const double* scale, std::size_t k,
                               std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    if (k == 2) {
        const double *a0 = a[0], *a1 = a[1];
        const __m256d s0 = _mm256_set1_pd(scale[0]), s1 = _mm256_set1_pd(scale[1]);
        for (; j + 4 <= n; j += 4) {
            __m256d f0 = _mm256_fmadd_pd(s0, _mm256_loadu_pd(a0 + j), one);
            __m256d f1 = _mm256_fmadd_pd(s1, _mm256_loadu_pd(a1 + j), one);
            acc = _mm256_fmadd_pd(f0, f1, acc);
        }
        double tail = 0.0;
        for (; j < n; ++j) tail += (1.0 + scale[0] * a0[j]) * (1.0 + scale[1] * a1[j]);
        return hsum(acc) + tail;
    }
    if (k == 3) {
        const double *a0 = a[0], *a1 = a[1], *a2 = a[2];
        const __m256d s0 = _mm256_set1_pd(scale[0]), s1 = _mm256_set1_pd(scale[1]),
                      s2 = _mm256_set1_pd(scale[2]);
        for (; j + 4 <= n; j += 4) {
            __m256d f0 = _mm256_fmadd_pd(s0, _mm256_loadu_pd(a0 + j), one);
            __m256d f1 = _mm256_fmadd_pd(s1, _mm256_loadu_pd(a1 + j), one);
            __m256d f2 = _mm256_fmadd_pd(s2, _mm256_loadu_pd(a2 + j), one);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(f0, f1), f2, acc);
        }
        double tail = 0.0;
        for (; j < n; ++j)
            tail += (1.0 + scale[0] * a0[j]) * (1.0 + scale[1] * a1[j]) * (1.0 + scale[2] * a2[j]);
        return hsum(acc) + tail;
    }
    for (; j + 4 <= n; j += 4) {
        __m256d p = _mm256_fmadd_pd(_mm256_set1_pd(scale[0]), _mm256_loadu_pd(a[0] + j), one);
        for (std::size_t l = 1; l < k; ++l)
            p = _mm256_mul_pd(p, _mm256_fmadd_pd(_mm256_set1_pd(scale[l]),
                                                 _mm256_loadu_pd(a[l] + j), one));
        acc = _mm256_add_pd(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) {
        double p = 1.0 + scale[0] * a[0][j];
        for (std::size_t l = 1; l < k; ++l) p *= 1.0 + scale[l] * a[l][j];
        tail += p;
    }
    return hsum(acc) + tail;
}

double abs_pow_sum_avx2(const double* a, std::size_t n, int m) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    if (m == 2) {
        __m256d acc2 = _mm256_setzero_pd();
        for (; j + 8 <= n; j += 8) {
            __m256d x = _mm256_loadu_pd(a + j), y = _mm256_loadu_pd(a + j + 4);
            acc = _mm256_fmadd_pd(x, x, acc);
            acc2 = _mm256_fmadd_pd(y, y, acc2);
        }
        acc = _mm256_add_pd(acc, acc2);
        for (; j + 4 <= n; j += 4) {
            __m256d x = _mm256_loadu_pd(a + j);
            acc = _mm256_fmadd_pd(x, x, acc);
        }
        double tail = 0.0;
        for (; j < n; ++j) tail += a[j] * a[j];
        return hsum(acc) + tail;
    }
    for (; j + 4 <= n; j += 4) {
        __m256d x = _mm256_and_pd(_mm256_loadu_pd(a + j), absmask);
        __m256d p = x;
        for (int i = 1; i < m; ++i) p = _mm256_mul_pd(p, x);
        acc = _mm256_add_pd(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) tail += powi(std::fabs(a[j]), m);
    return hsum(acc) + tail;
}

double pow_sum_avx2(const double* a, std::size_t n, int m) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d x = _mm256_loadu_pd(a + j);
        __m256d p = x;
        for (int i = 1; i < m; ++i) p = _mm256_mul_pd(p, x);
        acc = _mm256_add_pd(acc, p);
    }
    double tail = 0.0;
    for (; j < n; ++j) tail += powi(a[j], m);
    return hsum(acc) + tail;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + j));
        acc2 = _mm256_add_pd(acc2, _mm256_loadu_pd(a + j + 4));
    }
    acc = _mm256_add_pd(acc, acc2);
    for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + j));
    double tail = 0.0;
    for (; j < n; ++j) tail += a[j];
    return hsum(acc) + tail;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd(), acc2 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4), acc2);
    }
    acc = _mm256_add_pd(acc, acc2);
    for (; j + 4 <= n; j += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc);
    double tail = 0.0;
    for (; j < n; ++j) tail += a[j] * b[j];
    return hsum(acc) + tail;
}

} // namespace

const Ops* avx2_ops() {
    static const Ops ops{scaled_product_sum_avx2, affine_product_sum_avx2,
                         abs_pow_sum_avx2,        pow_sum_avx2,
                         sum_avx2,                dot_avx2,
                         "avx2"};
    return &ops;
}

} // namespace mcor::simd

#else

namespace mcor::simd {
const Ops* avx2_ops() { return nullptr; }
} // namespace mcor::simd

#endif
