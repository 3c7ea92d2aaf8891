#pragma once

#include "sparsecast/image.hpp"
#include "sparsecast/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace testing {

inline sparsecast::Frame random_frame(std::size_t w, std::size_t h, std::uint64_t seed) {
    sparsecast::GaussianSource rng(seed);
    sparsecast::Frame f(w, h);
    for (auto& p : f.pixels) p = std::floor(rng.uniform() * 256.0);
    return f;
}

// Smooth gradient plus texture: compressible like a natural image.
inline sparsecast::Frame smooth_frame(std::size_t w, std::size_t h, std::uint64_t seed) {
    sparsecast::GaussianSource rng(seed);
    sparsecast::Frame f(w, h);
    const double fx = 0.5 + rng.uniform(), fy = 0.5 + rng.uniform();
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double v = 128.0 + 60.0 * std::sin(fx * x / 23.0) * std::cos(fy * y / 31.0) +
                             40.0 * (static_cast<double>(x + y) / static_cast<double>(w + h) - 0.5);
            f.at(x, y) = std::round(std::clamp(v + 4.0 * rng.normal(), 0.0, 255.0));
        }
    }
    return f;
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    sparsecast::GaussianSource rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = scale * rng.normal();
    return v;
}

inline std::vector<double> sparse_vector(std::size_t n, std::size_t k, std::uint64_t seed) {
    sparsecast::GaussianSource rng(seed);
    std::vector<double> v(n, 0.0);
    std::size_t placed = 0;
    while (placed < k) {
        const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
        if (v[i] != 0.0) continue;
        v[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (1.0 + rng.uniform());
        ++placed;
    }
    return v;
}

}  // namespace testing
