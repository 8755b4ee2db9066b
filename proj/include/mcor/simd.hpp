#pragma once

#include <cstddef>
#include <string>

namespace mcor::simd {

// Reduction kernels behind the measure estimators. Every kernel has a scalar
// reference implementation and, where the target supports it, a vectorized
// variant selected once at startup. All variants compute the same sums up to
// floating-point summation order.
struct Ops {
    // sum_j prod_l (scale[l] * a[l][j])
    double (*scaled_product_sum)(const double* const* a, const double* scale, std::size_t k,
                                 std::size_t n);
    // sum_j prod_l (1 + scale[l] * a[l][j])
    double (*affine_product_sum)(const double* const* a, const double* scale, std::size_t k,
                                 std::size_t n);
    // sum_j |a[j]|^m, integer m >= 1
    double (*abs_pow_sum)(const double* a, std::size_t n, int m);
    // sum_j a[j]^m (signed), integer m >= 1
    double (*pow_sum)(const double* a, std::size_t n, int m);
    double (*sum)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    const char* name;
};

const Ops& scalar_ops();

// Active backend. Resolved once from CPU capabilities; MCOR_SIMD=scalar in
// the environment forces the reference kernels.
const Ops& ops();

// Test hook: override the active backend ("scalar", "avx2", "neon", "auto").
// Returns false if the backend is unavailable on this machine.
bool force_backend(const std::string& name);

} // namespace mcor::simd
