#pragma once

#include "mcor/kernels.hpp"
#include "mcor/types.hpp"

namespace mcor {

enum class EstimatorKind { biased, bias_corrected };

const char* to_string(EstimatorKind kind);

// Centered distance matrix. `biased` holds the doubly centered matrix CDC
// (every row and column sums to zero); `bias_corrected` holds the U-centered
// matrix (zero diagonal, every row sums to zero, requires N > 3).
struct CenteredMatrix {
    Matrix entries;
    EstimatorKind kind;
    KernelSpec source_kernel;

    std::size_t sample_size() const { return entries.rows(); }
};

// A[j][k] = D[j][k] - rowmean_j - colmean_k + grandmean  (equals C*D*C).
CenteredMatrix double_center(const DistanceMatrix& d);

// U-centering: zero diagonal, off-diagonal entries
//   D[j][k] - colsum_k/(N-2) - rowsum_j/(N-2) + totalsum/((N-1)(N-2)).
// Throws if N <= 3.
CenteredMatrix u_center(const DistanceMatrix& d);

CenteredMatrix center(const DistanceMatrix& d, EstimatorKind kind);

} // namespace mcor
