#pragma once

#include <cstdint>

namespace mcor {

// SplitMix64 output mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based SplitMix64 stream. All randomness in the library flows
// through this generator so that results are reproducible across platforms;
// sub-streams are derived from a master seed with stream_seed() below.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    // Uniform in the open interval (0, 1); never returns an endpoint, so the
    // result is always a valid quantile-function argument.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

// Derive a sub-stream seed from a master seed and a path of indices. Each
// step feeds the previous seed and one index through the SplitMix64 mixer.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a) {
    return mix64(master + 0x9e3779b97f4a7c15ull * (a + 1));
}
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return stream_seed(stream_seed(master, a), b);
}
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return stream_seed(stream_seed(master, a, b), c);
}

} // namespace mcor
