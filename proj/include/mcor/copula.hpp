#pragma once

#include "mcor/centering.hpp"
#include "mcor/measures.hpp"
#include "mcor/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mcor {

// Fresh uniforms for the Monte Carlo distributional transform: one draw per
// sample element, one independent stream per column, fully determined by the
// seed and the shape.
struct TransformDraws {
    std::uint64_t seed;
    Matrix u; // N x D in (0, 1)
};

// When `shared` is set, every column receives the same draw vector. That
// yields an upper-bound style transform which no longer characterizes
// independence; the default (independent draws per column) does.
TransformDraws make_transform_draws(std::uint64_t seed, std::size_t n, std::size_t d,
                                    bool shared = false);

// T(x) = P(X < x) + u * P(X = x).
double population_transform(double px_lt, double px_eq, double u);

// Sample version: out[j] = (1/N) * sum_k [ 1{x_k < x_j} + u_j * 1{x_k = x_j} ].
// Ties are compared by exact floating-point equality.
std::vector<double> mc_transform_column(std::span<const double> x, std::span<const double> u);

struct TransformedDataset {
    Matrix values; // in [0, 1]
    std::uint64_t seed;
    bool shared_draws = false;
};

// Column-wise Monte Carlo distributional transform of a dataset.
TransformedDataset transform_dataset(const Matrix& data, std::uint64_t seed,
                                     bool shared_draws = false);

// Copula version of a measure: the measure applied to the transformed
// dataset. Identical seeds give bit-identical results.
MeasureResult cmcor(const Matrix& data, const ComponentPartition& partition, EstimatorKind kind,
                    MeasureVariant variant, std::uint64_t seed, bool shared_draws = false,
                    const MeasureOptions& opts = {});

// Checks the reflection identity of the transform under a strictly
// decreasing map g: transform(g(x), u) == 1 - transform(x, 1-u), elementwise
// within 1e-12.
bool decreasing_transform_identity_check(std::span<const double> x, std::span<const double> u,
                                         const std::function<double(double)>& g);

} // namespace mcor
