#pragma once

// Portable, splittable random number generation.
//
// Every stochastic component (initial placement, fold shuffling, weight
// initialization) draws from Xoshiro256StarStar seeded through SplitMix64, so
// runs replay bit-for-bit on any platform and can be reimplemented in other
// languages from this file alone.

#include <array>
#include <cstdint>

namespace pursuitlab {

/// SplitMix64 (Steele, Lea, Flood 2014). Used for seeding and seed derivation.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// The SplitMix64 output finalizer; a bijection on 64-bit words.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). State filled by four SplitMix64 draws.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    constexpr result_type operator()() { return next(); }

    constexpr std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    constexpr double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Unbiased integer in [0, n) by rejection; n must be > 0.
    constexpr std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

/// Seed for episode `episode_index` of team `team_index` under `master_seed`.
///
/// seed = mix(master_seed + 0x9e3779b97f4a7c15 * (((team << 32) | episode) + 1))
///
/// The key is injective for indices below 2^32, multiplication by an odd
/// constant and mix() are bijections mod 2^64, so distinct (team, episode)
/// pairs always receive distinct seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t team_index,
                                    std::uint64_t episode_index) {
    const std::uint64_t key = (team_index << 32) | (episode_index & 0xffffffffULL);
    return SplitMix64::mix(master_seed + 0x9e3779b97f4a7c15ULL * (key + 1));
}

/// Fisher-Yates shuffle driven by the portable generator.
template <typename Container>
void shuffle(Container& c, Xoshiro256StarStar& rng) {
    const auto n = static_cast<std::uint64_t>(c.size());
    for (std::uint64_t i = n; i > 1; --i) {
        const std::uint64_t j = rng.below(i);
        using std::swap;
        swap(c[i - 1], c[j]);
    }
}

}  // namespace pursuitlab
