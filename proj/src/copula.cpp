#include "mcor/copula.hpp"

#include "mcor/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcor {

namespace {
constexpr std::uint64_t kColumnStreamTag = 0x7472616e73666f72ull; // column draw streams
} // namespace

TransformDraws make_transform_draws(std::uint64_t seed, std::size_t n, std::size_t d,
                                    bool shared) {
    Matrix u(n, d);
    if (shared) {
        Rng rng(stream_seed(seed, kColumnStreamTag, 0));
        for (std::size_t r = 0; r < n; ++r) {
            const double v = rng.uniform();
            for (std::size_t c = 0; c < d; ++c) u(r, c) = v;
        }
    } else {
        for (std::size_t c = 0; c < d; ++c) {
            Rng rng(stream_seed(seed, kColumnStreamTag, c));
            for (std::size_t r = 0; r < n; ++r) u(r, c) = rng.uniform();
        }
    }
    return TransformDraws{seed, std::move(u)};
}

double population_transform(double px_lt, double px_eq, double u) {
    if (!(px_lt >= 0.0) || !(px_eq >= 0.0) || !(px_lt + px_eq <= 1.0 + 1e-15))
        throw std::invalid_argument("population_transform: invalid probabilities");
    if (!(u >= 0.0) || !(u <= 1.0))
        throw std::invalid_argument("population_transform: u must lie in [0, 1]");
    return px_lt + u * px_eq;
}

std::vector<double> mc_transform_column(std::span<const double> x, std::span<const double> u) {
    const std::size_t n = x.size();
    if (u.size() != n) throw std::invalid_argument("mc_transform_column: length mismatch");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    // runs of exactly equal values share their below-count and tie-count
    std::vector<double> out(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && x[order[j]] == x[order[i]]) ++j;
        const double below = static_cast<double>(i);
        const double ties = static_cast<double>(j - i);
        for (std::size_t k = i; k < j; ++k) {
            const std::size_t idx = order[k];
            out[idx] = (below + u[idx] * ties) * inv_n;
        }
        i = j;
    }
    return out;
}

TransformedDataset transform_dataset(const Matrix& data, std::uint64_t seed, bool shared_draws) {
    if (data.empty()) throw std::invalid_argument("transform_dataset: empty dataset");
    const TransformDraws draws = make_transform_draws(seed, data.rows(), data.cols(), shared_draws);

    Matrix out(data.rows(), data.cols());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        const std::vector<double> col = data.column(c);
        const std::vector<double> ucol = draws.u.column(c);
        const std::vector<double> t = mc_transform_column(col, ucol);
        for (std::size_t r = 0; r < data.rows(); ++r) out(r, c) = t[r];
    }
    return TransformedDataset{std::move(out), seed, shared_draws};
}

MeasureResult cmcor(const Matrix& data, const ComponentPartition& partition, EstimatorKind kind,
                    MeasureVariant variant, std::uint64_t seed, bool shared_draws,
                    const MeasureOptions& opts) {
    const TransformedDataset t = transform_dataset(data, seed, shared_draws);
    return compute_measure(t.values, partition, variant, kind, opts);
}

bool decreasing_transform_identity_check(std::span<const double> x, std::span<const double> u,
                                         const std::function<double(double)>& g) {
    const std::size_t n = x.size();
    if (u.size() != n) throw std::invalid_argument("length mismatch");

    std::vector<double> gx(n), u_flip(n);
    for (std::size_t i = 0; i < n; ++i) {
        gx[i] = g(x[i]);
        u_flip[i] = 1.0 - u[i];
    }
    const std::vector<double> lhs = mc_transform_column(gx, u);
    const std::vector<double> rhs = mc_transform_column(x, u_flip);
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(lhs[i] - (1.0 - rhs[i])) > 1e-12) return false;
    return true;
}

} // namespace mcor
