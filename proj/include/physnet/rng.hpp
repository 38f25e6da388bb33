#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace physnet {

/// SplitMix64 finalizer. Stable across platforms; the basis for all seed
/// derivation in this project.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Stream splitting: fold a key path into a root seed.
/// h = mix64(root); h = mix64(h ^ mix64(k)) for each key k, in order.
/// Order-sensitive, so derive_seed(r, {a,b}) != derive_seed(r, {b,a}).
inline std::uint64_t derive_seed(std::uint64_t root, std::span<const std::uint64_t> path) {
    std::uint64_t h = mix64(root);
    for (std::uint64_t k : path) h = mix64(h ^ mix64(k));
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t root,
                                 std::initializer_list<std::uint64_t> path) {
    return derive_seed(root, std::span<const std::uint64_t>(path.begin(), path.size()));
}

// Stream tags, so independent consumers of one root seed never collide.
inline constexpr std::uint64_t kStreamCenters = 1;
inline constexpr std::uint64_t kStreamScheduler = 2;
inline constexpr std::uint64_t kStreamLhs = 3;

/// xoshiro256++ (Blackman & Vigna, public domain reference implementation).
/// Seeded through SplitMix64 state expansion. All stochastic draws in the
/// toolkit flow through this generator so runs reproduce bit-for-bit on any
/// platform, unlike std::uniform_* distributions whose algorithms are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + uniform01() * (hi - lo); }

    /// Unbiased integer in [0, n), n >= 1. Masked rejection sampling.
    std::uint64_t below(std::uint64_t n) noexcept {
        if (n <= 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next() & mask;
            if (v < n) return v;
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace physnet
