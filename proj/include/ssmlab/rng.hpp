#pragma once

#include <cstdint>

namespace ssmlab {

// Deterministic RNG used everywhere randomness is needed.  xoshiro256++
// seeded through SplitMix64, with an explicit uint64 -> double mapping, so
// streams are reproducible bit-for-bit across platforms and compilers.
// (std::uniform_real_distribution is implementation-defined and is not used.)
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    // Independent stream derived from (seed, index).  Streams with different
    // indices are decorrelated regardless of draw order, which lets Monte
    // Carlo loops assign one substream per sample and stay order-independent.
    static SeededRng substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        std::uint64_t base = splitmix64(s);
        std::uint64_t mixed = base ^ (index * 0x9E3779B97F4A7C15ULL + 0x6A09E667F3BCC909ULL);
        return SeededRng(mixed);
    }

    std::uint64_t next() {
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

    // Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    // Uniform in [-alpha, alpha).
    double uniform_sym(double alpha) { return uniform(-alpha, alpha); }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace ssmlab
