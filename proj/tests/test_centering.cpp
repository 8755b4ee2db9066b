#include "mcor/centering.hpp"
#include "mcor/rng.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace mcor;

namespace {

DistanceMatrix line_distances(const std::vector<double>& points, double alpha = 1.0) {
    Matrix samples(points.size(), 1);
    for (std::size_t i = 0; i < points.size(); ++i) samples(i, 0) = points[i];
    return distance_matrix(samples, KernelSpec::euclidean_power(alpha));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            worst = std::max(worst, std::fabs(a(r, c) - b(r, c)));
    return worst;
}

double max_abs(const Matrix& a) {
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) worst = std::max(worst, std::fabs(a(r, c)));
    return worst;
}

} // namespace

TEST_SUITE("centering") {

TEST_CASE("two-point double centering by hand") {
    const CenteredMatrix a = double_center(line_distances({0.0, 3.0}));
    CHECK(a.entries(0, 0) == doctest::Approx(-1.5));
    CHECK(a.entries(0, 1) == doctest::Approx(1.5));
    CHECK(a.entries(1, 0) == doctest::Approx(1.5));
    CHECK(a.entries(1, 1) == doctest::Approx(-1.5));
    CHECK(a.kind == EstimatorKind::biased);
}

TEST_CASE("constant samples center to zero") {
    const CenteredMatrix biased = double_center(line_distances({2.0, 2.0, 2.0}));
    CHECK(max_abs(biased.entries) == 0.0);

    const CenteredMatrix corrected = u_center(line_distances({2.0, 2.0, 2.0, 2.0, 2.0}));
    CHECK(max_abs(corrected.entries) == 0.0);
}

TEST_CASE("double centering equals the explicit C*D*C product") {
    Rng rng(41);
    Matrix samples(6, 1);
    for (std::size_t r = 0; r < 6; ++r) samples(r, 0) = rng.uniform() * 5.0;
    const DistanceMatrix d = distance_matrix(samples, KernelSpec::euclidean_power(1.0));
    CHECK(max_abs_diff(double_center(d).entries, oracle::double_center(d.entries)) < 1e-12);
}

TEST_CASE("u-centering matches the literal four-term formula") {
    const DistanceMatrix d = line_distances({0.0, 1.0, 2.0, 3.0});
    const CenteredMatrix got = u_center(d);
    const Matrix expected = oracle::u_center(d.entries);
    CHECK(max_abs_diff(got.entries, expected) < 1e-12);
    for (std::size_t j = 0; j < 4; ++j) CHECK(got.entries(j, j) == 0.0);
}

TEST_CASE("u-centered row sums vanish") {
    Rng rng(42);
    std::vector<double> points(10);
    for (double& p : points) p = rng.uniform() * 4.0 - 2.0;
    const CenteredMatrix a = u_center(line_distances(points));
    for (std::size_t j = 0; j < 10; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 10; ++k) s += a.entries(j, k);
        CHECK(std::fabs(s) < 1e-9);
    }
}

TEST_CASE("biased row and column sums vanish") {
    Rng rng(43);
    Matrix samples(9, 2);
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 2; ++c) samples(r, c) = rng.uniform();
    const CenteredMatrix a =
        double_center(distance_matrix(samples, KernelSpec::euclidean_power(1.5)));
    for (std::size_t j = 0; j < 9; ++j) {
        double row = 0.0, col = 0.0;
        for (std::size_t k = 0; k < 9; ++k) {
            row += a.entries(j, k);
            col += a.entries(k, j);
        }
        CHECK(std::fabs(row) < 1e-9);
        CHECK(std::fabs(col) < 1e-9);
    }
}

TEST_CASE("double centering is idempotent") {
    Rng rng(44);
    std::vector<double> points(8);
    for (double& p : points) p = rng.uniform() * 10.0;
    const CenteredMatrix once = double_center(line_distances(points));
    const DistanceMatrix as_input{once.entries, once.source_kernel};
    const CenteredMatrix twice = double_center(as_input);
    CHECK(max_abs_diff(once.entries, twice.entries) < 1e-10);
}

TEST_CASE("linear relation scales centered matrices by |b|") {
    Rng rng(45);
    std::vector<double> x(12), y(12);
    const double a = 4.0, b = -2.5;
    for (std::size_t i = 0; i < 12; ++i) {
        x[i] = rng.uniform() * 3.0;
        y[i] = a + b * x[i];
    }
    for (EstimatorKind kind : {EstimatorKind::biased, EstimatorKind::bias_corrected}) {
        const Matrix cx = center(line_distances(x), kind).entries;
        const Matrix cy = center(line_distances(y), kind).entries;
        for (std::size_t j = 0; j < 12; ++j)
            for (std::size_t k = 0; k < 12; ++k)
                CHECK(cy(j, k) == doctest::Approx(std::fabs(b) * cx(j, k)).epsilon(1e-10));
    }
}

TEST_CASE("bias correction rejects tiny samples") {
    CHECK_THROWS_WITH_AS(u_center(line_distances({0.0, 1.0, 2.0})),
                         "bias correction requires more than 3 samples", std::invalid_argument);
    CHECK_THROWS_AS(u_center(line_distances({0.0, 1.0})), std::invalid_argument);
    CHECK_NOTHROW(u_center(line_distances({0.0, 1.0, 2.0, 3.5})));
}

} // TEST_SUITE
