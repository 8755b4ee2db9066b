#pragma once

#include "mcor/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mcor {

enum class KernelFamily { euclidean_power };

// Negative definite kernel psi(x - y) = |x - y|^alpha. The exponent must lie
// strictly inside (0, 2): at alpha = 2 the kernel no longer characterizes
// independence, so construction rejects it.
struct KernelSpec {
    KernelFamily family = KernelFamily::euclidean_power;
    double alpha = 1.0;

    static KernelSpec euclidean_power(double alpha);

    bool operator==(const KernelSpec&) const = default;
};

// One component of a composite sample: which dataset columns it owns and the
// kernel used for its distances.
struct ComponentSpec {
    std::vector<std::size_t> columns;
    KernelSpec kernel;
};

// Grouping of dataset columns into n components. Index sets must be
// disjoint, nonempty and cover all columns of the dataset they describe.
class ComponentPartition {
public:
    ComponentPartition(std::vector<ComponentSpec> components, std::size_t dataset_cols);

    // One univariate component per column, all with the same kernel.
    static ComponentPartition univariate(std::size_t n_cols, KernelSpec kernel);

    std::size_t size() const { return components_.size(); }
    std::size_t dataset_cols() const { return dataset_cols_; }
    const ComponentSpec& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<ComponentSpec>& components() const { return components_; }

private:
    std::vector<ComponentSpec> components_;
    std::size_t dataset_cols_ = 0;
};

struct DistanceMatrix {
    Matrix entries; // N x N, symmetric, zero diagonal
    KernelSpec kernel;

    std::size_t sample_size() const { return entries.rows(); }
};

// psi(x - y) for one kernel. Vectors must have equal dimension.
double psi_eval(const KernelSpec& kernel, std::span<const double> x, std::span<const double> y);

// Pairwise distance matrix of the rows of `samples` (N x d, N >= 2).
DistanceMatrix distance_matrix(const Matrix& samples, const KernelSpec& kernel);

// Copy of the columns belonging to one component, as an N x d_i matrix.
Matrix component_data(const Matrix& data, const ComponentSpec& comp);

} // namespace mcor
