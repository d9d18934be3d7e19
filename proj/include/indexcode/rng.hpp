#pragma once

#include <cstdint>

namespace indexcode {

// Deterministic 64-bit generator used for every random choice the toolkit
// makes. The algorithm is the splitmix64 sequence (Steele/Lea/Flood mixing
// constants): identical seeds give identical streams on every platform, and
// derived streams make generated content independent of generation order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection sampling; no modulo bias.
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound <= 1)
            return 0;
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x = next();
        while (x >= limit)
            x = next();
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Child stream derivation: derive(seed, i) != derive(seed, j) for i != j with
// overwhelming probability, and the child streams are decorrelated from the
// parent. Pinned formula: mix the index through one splitmix64 step and fold
// it into the seed, then mix again.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 a(index + 0x9E3779B97F4A7C15ULL);
    SplitMix64 b(seed ^ a.next());
    return b.next();
}

} // namespace indexcode
