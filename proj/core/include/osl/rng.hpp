// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace osl {

/// SplitMix64 (Steele/Lea/Vigna, public domain). Used to scramble user seeds
/// and to expand one seed into generator state.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_{seed} {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

/// One scrambling round; convenient for deriving sub-stream seeds.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    SplitMix64 sm(a + 0x9e3779b97f4a7c15ULL * (b + 1));
    return sm.next();
}

/// xoshiro256++ 1.0 (Blackman/Vigna, public domain). The repository's only
/// random source. Keeping the generator in-repo (instead of the standard
/// library engines) pins every generated dataset to its seed regardless of
/// toolchain.
class Xoshiro256PlusPlus {
  public:
    explicit Xoshiro256PlusPlus(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

/// Uniform double in [0, 1), 53-bit mantissa scaling.
inline double uniform01(Xoshiro256PlusPlus& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe as a log() argument.
inline double uniform01_open_low(Xoshiro256PlusPlus& rng) {
    return static_cast<double>((rng.next() >> 11) + 1) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Xoshiro256PlusPlus& rng, std::uint64_t bound) {
    // bound == 0 is a caller error; treat as full range.
    if (bound == 0) return rng.next();
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng.next();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace osl
