#pragma once

#include <cmath>
#include <cstdint>

// Deterministic, platform-independent random streams. All randomness in the
// library flows through these generators so that a fixed seed reproduces the
// same bits on every build; std::random distributions are avoided because
// their output is implementation-defined.
namespace groupsketch::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless PRF over a 64-bit counter; used for counter-based streams where
// element i of a sequence must not depend on elements before it.
inline std::uint64_t mix(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t s = key ^ (counter * 0x9e3779b97f4a7c15ULL);
    splitmix64(s);
    return splitmix64(s);
}

// Derives an independent substream seed, e.g. per run or per group.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0) {
    return mix(mix(mix(seed, a), b), c);
}

inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Maps to the open interval (0,1); safe as a log() argument.
inline double to_open_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal from a single counter value (Box-Muller, cosine branch).
inline double normal_at(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t s = mix(key, counter);
    const double u1 = to_open_unit(splitmix64(s));
    const double u2 = to_unit(splitmix64(s));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }
    double next_unit() { return to_unit(next_u64()); }
    double next_open_unit() { return to_open_unit(next_u64()); }
    bool next_bernoulli(double p) { return next_unit() < p; }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_open_unit();
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925287 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace groupsketch::rng
