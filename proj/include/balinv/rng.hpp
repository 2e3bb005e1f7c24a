#pragma once

#include <cstdint>

namespace balinv {

// SplitMix64: tiny 64-bit generator with a fixed, platform-independent
// output sequence. Used everywhere a seeded draw is needed so that runs
// are reproducible byte for byte.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi); degenerates to exactly lo when lo == hi.
    double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_double();
    }

private:
    std::uint64_t state_;
};

// Deterministic child-seed derivation; mixing is associative-free so
// (seed, a, b) and (seed, b, a) give unrelated streams.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                           std::uint64_t b) noexcept {
    SplitMix64 g(seed);
    SplitMix64 ga(g.next() + 0x632be59bd9b4e019ULL * a);
    SplitMix64 gb(ga.next() + 0x9e6c63d0a48d9a1fULL * b);
    return gb.next();
}

} // namespace balinv
