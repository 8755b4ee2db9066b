#include "mcor/harness.hpp"

#include <cmath>

namespace mcor {

const char* to_string(Marginal m) {
    switch (m) {
        case Marginal::norm: return "norm";
        case Marginal::unif: return "unif";
        case Marginal::exponential: return "exp";
        case Marginal::chi_sq: return "chi";
        case Marginal::bern: return "bern";
    }
    return "?";
}

Marginal parse_marginal(const std::string& name) {
    for (Marginal m : {Marginal::norm, Marginal::unif, Marginal::exponential, Marginal::chi_sq,
                       Marginal::bern})
        if (name == to_string(m)) return m;
    throw std::invalid_argument("unsupported marginal: " + name +
                                " (expected norm|unif|exp|chi|bern)");
}

// AS 241 algorithm PPND16 (Wichura), double-precision rational approximation
// of the standard normal quantile.
double normal_quantile(double u) {
    if (!(u > 0.0) || !(u < 1.0))
        throw std::invalid_argument("normal_quantile requires u in (0, 1)");

    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) *
                        r +
                    4.5921953931549871457e4) *
                       r +
                   1.3731693765509461125e4) *
                      r +
                  1.9715909503065514427e3) *
                     r +
                 1.3314166789178437745e2) *
                    r +
                3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) *
                        r +
                    2.1213794301586595867e4) *
                       r +
                   5.3941960214247511077e3) *
                      r +
                  6.8718700749205790830e2) *
                     r +
                 4.2313330701600911252e1) *
                    r +
                1.0);
    }

    double r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) *
                       r +
                   1.27045825245236838258e0) *
                      r +
                  3.64784832476320460504e0) *
                     r +
                 5.76949722146069140550e0) *
                    r +
                4.63033784615654529590e0) *
                   r +
               1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) *
                       r +
                   1.48103976427480074590e-1) *
                      r +
                  6.89767334985100004550e-1) *
                     r +
                 1.67638483018380384940e0) *
                    r +
                2.05319162663775882187e0) *
                   r +
               1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) *
                       r +
                   2.65321895265761230930e-2) *
                      r +
                  2.96560571828504891230e-1) *
                     r +
                 1.78482653991729133580e0) *
                    r +
                5.46378491116411436990e0) *
                   r +
               6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) *
                       r +
                   7.86869131145613259100e-4) *
                      r +
                  1.48753612908506148525e-2) *
                     r +
                 1.36929880922735805310e-1) *
                    r +
                5.99832206555887937690e-1) *
                   r +
               1.0);
    }
    return (q < 0.0) ? -val : val;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * (1.0 / std::sqrt(2.0))); }

double marginal_quantile(Marginal m, double u) {
    if (m == Marginal::bern) {
        if (!(u >= 0.0) || !(u <= 1.0))
            throw std::invalid_argument("marginal_quantile(bern) requires u in [0, 1]");
        return u > 0.5 ? 1.0 : 0.0;
    }
    if (!(u > 0.0) || !(u < 1.0))
        throw std::invalid_argument("marginal_quantile requires u in (0, 1)");
    switch (m) {
        case Marginal::norm: return normal_quantile(u);
        case Marginal::unif: return u;
        case Marginal::exponential: return -std::log1p(-u);
        case Marginal::chi_sq: {
            const double z = normal_quantile(0.5 * (1.0 + u));
            return z * z;
        }
        default: break;
    }
    throw std::invalid_argument("unsupported marginal");
}

Matrix cholesky_psd(const Matrix& a) {
    const std::size_t k = a.rows();
    if (a.cols() != k) throw std::invalid_argument("cholesky_psd: matrix must be square");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::fabs(a(i, j) - a(j, i)) > 1e-12)
                throw std::invalid_argument("cholesky_psd: matrix must be symmetric");

    const double tol = 1e-10;
    Matrix l = Matrix::square(k);
    for (std::size_t j = 0; j < k; ++j) {
        double d = a(j, j);
        for (std::size_t c = 0; c < j; ++c) d -= l(j, c) * l(j, c);
        if (d < -tol)
            throw std::invalid_argument("correlation matrix is not positive semidefinite");
        if (d <= tol) {
            // semidefinite direction: the whole column collapses
            continue;
        }
        const double root = std::sqrt(d);
        l(j, j) = root;
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = a(i, j);
            for (std::size_t c = 0; c < j; ++c) s -= l(i, c) * l(j, c);
            l(i, j) = s / root;
        }
    }
    return l;
}

namespace {

// Multivariate normal rows z = L * iid standard normals, drawn row by row.
Matrix sample_mvn(const Matrix& correlation, std::size_t n, Rng& rng) {
    const std::size_t k = correlation.rows();
    for (std::size_t i = 0; i < k; ++i)
        if (std::fabs(correlation(i, i) - 1.0) > 1e-12)
            throw std::invalid_argument("correlation matrix must have unit diagonal");
    const Matrix l = cholesky_psd(correlation);

    Matrix out(n, k);
    std::vector<double> z(k);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < k; ++i) z[i] = normal_quantile(rng.uniform());
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t c = 0; c <= i; ++c) s += l(i, c) * z[c];
            out(r, i) = s;
        }
    }
    return out;
}

Matrix pair_correlation(double rho) {
    if (!(rho >= -1.0) || !(rho <= 1.0))
        throw std::invalid_argument("rho must lie in [-1, 1]");
    Matrix c = Matrix::square(2, 0.0);
    c(0, 0) = c(1, 1) = 1.0;
    c(0, 1) = c(1, 0) = rho;
    return c;
}

} // namespace

Matrix sample_gaussian_copula(const Matrix& correlation, std::size_t n, Rng& rng) {
    Matrix z = sample_mvn(correlation, n, rng);
    for (std::size_t r = 0; r < z.rows(); ++r)
        for (std::size_t c = 0; c < z.cols(); ++c) z(r, c) = normal_cdf(z(r, c));
    return z;
}

Matrix sample_gaussian_copula(double rho, std::size_t n, Rng& rng) {
    return sample_gaussian_copula(pair_correlation(rho), n, rng);
}

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::gauss_copula_pair: return "gauss-copula-pair";
        case Scenario::within_margin: return "within-margin";
        case Scenario::multivariate_normal: return "multivariate-normal";
        case Scenario::interpolation: return "interpolation";
        case Scenario::perturbed_bernoulli: return "perturbed-bernoulli";
        case Scenario::perturbed_line: return "perturbed-line";
    }
    return "?";
}

ScenarioData scenario_generate(const ScenarioConfig& config) {
    const std::size_t n = config.n;
    if (n < 2) throw std::invalid_argument("scenario requires n >= 2");
    const KernelSpec kernel = KernelSpec::euclidean_power(1.0);
    Rng rng(stream_seed(config.seed, static_cast<std::uint64_t>(config.scenario)));

    switch (config.scenario) {
        case Scenario::gauss_copula_pair: {
            const Matrix u = sample_gaussian_copula(config.rho, n, rng);
            Matrix data(n, 2);
            for (std::size_t r = 0; r < n; ++r) {
                data(r, 0) = marginal_quantile(config.mx, u(r, 0));
                data(r, 1) = marginal_quantile(config.my, u(r, 1));
            }
            return {std::move(data), ComponentPartition::univariate(2, kernel)};
        }
        case Scenario::within_margin: {
            if (!(config.s >= 0.0) || !(config.s <= 1.0))
                throw std::invalid_argument("within-margin requires s in [0, 1]");
            Matrix corr = Matrix::square(3, 0.5);
            corr(0, 0) = corr(1, 1) = corr(2, 2) = 1.0;
            corr(0, 1) = corr(1, 0) = config.s;
            Matrix data = sample_mvn(corr, n, rng);
            ComponentPartition partition({{{0, 1}, kernel}, {{2}, kernel}}, 3);
            return {std::move(data), std::move(partition)};
        }
        case Scenario::multivariate_normal: {
            if (!(config.s >= 0.0) || !(config.s <= 1.0))
                throw std::invalid_argument("multivariate-normal requires s in [0, 1]");
            Matrix corr = Matrix::square(3, config.s);
            corr(0, 0) = corr(1, 1) = corr(2, 2) = 1.0;
            Matrix data = sample_mvn(corr, n, rng);
            return {std::move(data), ComponentPartition::univariate(3, kernel)};
        }
        case Scenario::interpolation: {
            if (!(config.s >= 0.0) || !(config.s <= 1.0))
                throw std::invalid_argument("interpolation requires s in [0, 1]");
            Matrix data(n, 3);
            for (std::size_t r = 0; r < n; ++r) {
                const double shared = normal_quantile(rng.uniform());
                for (std::size_t c = 0; c < 3; ++c) {
                    const double own = normal_quantile(rng.uniform());
                    data(r, c) = config.s * shared + (1.0 - config.s) * own;
                }
            }
            return {std::move(data), ComponentPartition::univariate(3, kernel)};
        }
        case Scenario::perturbed_bernoulli: {
            if (!(config.s >= 0.0))
                throw std::invalid_argument("perturbed-bernoulli requires s >= 0");
            Matrix data(n, 3);
            for (std::size_t r = 0; r < n; ++r) {
                const double y1 = rng.uniform() > 0.5 ? 1.0 : 0.0;
                const double y2 = rng.uniform() > 0.5 ? 1.0 : 0.0;
                const double y3 = (y1 == y2) ? 1.0 : 0.0;
                double noise[3];
                for (double& v : noise) v = normal_quantile(rng.uniform());
                data(r, 0) = y1 + config.s * noise[0];
                data(r, 1) = y2 + config.s * noise[1];
                data(r, 2) = y3 + config.s * noise[2];
            }
            return {std::move(data), ComponentPartition::univariate(3, kernel)};
        }
        case Scenario::perturbed_line: {
            if (!(config.r >= 0.0)) throw std::invalid_argument("perturbed-line requires r >= 0");
            Matrix data(n, 2);
            for (std::size_t r = 0; r < n; ++r) {
                const double x = normal_quantile(rng.uniform());
                const double z = normal_quantile(rng.uniform());
                data(r, 0) = x;
                data(r, 1) = x + config.r * z;
            }
            return {std::move(data), ComponentPartition::univariate(2, kernel)};
        }
    }
    throw std::invalid_argument("unknown scenario");
}

} // namespace mcor
