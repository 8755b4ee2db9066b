#include "mcor/centering.hpp"

namespace mcor {

const char* to_string(EstimatorKind kind) {
    return kind == EstimatorKind::biased ? "biased" : "bias-corrected";
}

CenteredMatrix double_center(const DistanceMatrix& d) {
    const std::size_t n = d.sample_size();
    const Matrix& D = d.entries;

    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        const double* row = D.data() + j * n;
        for (std::size_t k = 0; k < n; ++k) s += row[k];
        row_mean[j] = s / static_cast<double>(n);
        grand += s;
    }
    grand /= static_cast<double>(n) * static_cast<double>(n);

    Matrix out = Matrix::square(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double* src = D.data() + j * n;
        double* dst = out.data() + j * n;
        const double rj = row_mean[j];
        // D symmetric, so column means equal row means
        for (std::size_t k = 0; k < n; ++k) dst[k] = src[k] - rj - row_mean[k] + grand;
    }
    return CenteredMatrix{std::move(out), EstimatorKind::biased, d.kernel};
}

CenteredMatrix u_center(const DistanceMatrix& d) {
    const std::size_t n = d.sample_size();
    if (n <= 3) throw std::invalid_argument("bias correction requires more than 3 samples");
    const Matrix& D = d.entries;

    std::vector<double> row_sum(n, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        const double* row = D.data() + j * n;
        for (std::size_t k = 0; k < n; ++k) s += row[k];
        row_sum[j] = s;
        total += s;
    }

    const double inv_n2 = 1.0 / static_cast<double>(n - 2);
    const double grand_term = total / (static_cast<double>(n - 1) * static_cast<double>(n - 2));

    Matrix out = Matrix::square(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double* src = D.data() + j * n;
        double* dst = out.data() + j * n;
        const double rj = row_sum[j] * inv_n2;
        for (std::size_t k = 0; k < n; ++k)
            dst[k] = src[k] - row_sum[k] * inv_n2 - rj + grand_term;
        dst[j] = 0.0;
    }
    return CenteredMatrix{std::move(out), EstimatorKind::bias_corrected, d.kernel};
}

CenteredMatrix center(const DistanceMatrix& d, EstimatorKind kind) {
    return kind == EstimatorKind::biased ? double_center(d) : u_center(d);
}

} // namespace mcor
