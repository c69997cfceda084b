#pragma once

#include <cstdint>

namespace popsim {

/// Deterministic 64-bit generator used everywhere in the simulator.
///
/// Algorithm: SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom
/// number generators", OOPSLA 2014), i.e. a Weyl sequence with increment
/// 0x9E3779B97F4A7C15 passed through the murmur-style finalizer.  The output
/// sequence for a given seed is identical on every platform and compiler,
/// which is what makes run reports reproducible byte for byte.  The standard
/// <random> distributions are deliberately not used: their draw sequences are
/// implementation defined.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    /// Finalizer as a pure function; bijective on 64-bit words.
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    constexpr std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform draw from [0, bound).  Lemire's multiply-shift reduction with
    /// rejection of the biased low fraction, so the result is exactly uniform
    /// rather than uniform up to modulo bias.  bound must be nonzero.
    constexpr std::uint64_t bounded(std::uint64_t bound) noexcept {
        unsigned __int128 product =
            static_cast<unsigned __int128>(next_u64()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(next_u64()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Seed of the i-th trial derived from a base seed.
///
/// seed_i = mix(base + (i + 1) * 0x9E3779B97F4A7C15).  For a fixed base the
/// map i -> base + (i+1)*gamma is injective modulo 2^64 (gamma is odd) and
/// mix is a bijection, so trial seeds never collide for any trial range.
constexpr std::uint64_t trial_seed(std::uint64_t base_seed,
                                   std::uint64_t trial_index) noexcept {
    return SplitMix64::mix(base_seed +
                           (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Independent stream for auxiliary randomness (fault injection, adversarial
/// spoiling) so that harness perturbations never disturb the scheduler draw
/// sequence of the run they are paired with.
constexpr std::uint64_t substream_seed(std::uint64_t seed,
                                       std::uint64_t tag) noexcept {
    return SplitMix64::mix(seed ^ (0xA0761D6478BD642FULL + tag));
}

} // namespace popsim
