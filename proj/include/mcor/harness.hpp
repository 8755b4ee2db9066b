#pragma once

#include "mcor/kernels.hpp"
#include "mcor/rng.hpp"
#include "mcor/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mcor {

// Marginal families used by the simulation experiments. Each is sampled by
// applying its (generalized) inverse distribution function to a uniform.
enum class Marginal { norm, unif, exponential, chi_sq, bern };

const char* to_string(Marginal m);
Marginal parse_marginal(const std::string& name);

// Standard normal quantile, AS 241 (PPND16) rational approximation;
// absolute error below 1e-9 across (0, 1).
double normal_quantile(double u);

// Standard normal distribution function.
double normal_cdf(double x);

// Quantile of one marginal family: exp(1), chi-squared(1), Bernoulli(0.5),
// uniform(0,1) or standard normal.
double marginal_quantile(Marginal m, double u);

// N x k uniform sample whose joint distribution is the Gaussian copula of
// `correlation` (symmetric PSD with unit diagonal). Draws k normals per row
// via the Cholesky factor, then maps through the normal CDF.
Matrix sample_gaussian_copula(const Matrix& correlation, std::size_t n, Rng& rng);
// Two-column convenience overload for a single correlation rho.
Matrix sample_gaussian_copula(double rho, std::size_t n, Rng& rng);

// Lower-triangular Cholesky factor tolerating positive semidefinite input
// (zero pivots allowed). Throws on indefinite matrices.
Matrix cholesky_psd(const Matrix& a);

enum class Scenario {
    gauss_copula_pair,   // two marginals coupled by a Gaussian copula
    within_margin,       // (X1,X2) vs Y, standard normal, cov(X1,X2)=s, cov(Xi,Y)=0.5
    multivariate_normal, // 3 standard normals with pairwise covariance s
    interpolation,       // s*(X,X,X) + (1-s)*(X1,X2,X3)
    perturbed_bernoulli, // (Y1,Y2,1{Y1=Y2}) + s*(X1,X2,X3)
    perturbed_line,      // (X, X + r*Z)
};

const char* to_string(Scenario s);

struct ScenarioConfig {
    Scenario scenario = Scenario::gauss_copula_pair;
    std::size_t n = 100;
    double s = 0.0;           // within_margin / multivariate_normal / interpolation / perturbed_bernoulli
    double r = 0.0;           // perturbed_line
    double rho = 0.0;         // gauss_copula_pair
    Marginal mx = Marginal::norm;
    Marginal my = Marginal::norm;
    std::uint64_t seed = 0;
};

struct ScenarioData {
    Matrix data;
    ComponentPartition partition;
};

// Deterministic dataset for one scenario, with the partition the scenario
// implies. Kernel is |.|^1 throughout.
ScenarioData scenario_generate(const ScenarioConfig& config);

} // namespace mcor
