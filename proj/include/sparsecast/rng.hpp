#pragma once
// Reproducible randomness shared by encoder, channel and decoder.
//
// Seeds are derived with SplitMix64 mixing; streams come from std::mt19937_64,
// whose output sequence is fixed by the C++ standard. Uniforms take the top 53
// bits of each draw; normals use the Marsaglia polar method. None of this goes
// through std::*_distribution, whose algorithms are implementation-defined.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sparsecast {

/// One SplitMix64 step (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hash a base seed together with an ordered path of indices.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal.
    double normal() noexcept;

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sparsecast
