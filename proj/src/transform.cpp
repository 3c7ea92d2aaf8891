#include "sparsecast/transform.hpp"

#include "sparsecast/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sparsecast {

BlockDct::BlockDct(std::size_t side) : side_(side), basis_(side, side) {
    if (side == 0) throw Error(ErrorCode::invalid_argument, "DCT block side must be positive");
    const double s = static_cast<double>(side);
    for (std::size_t u = 0; u < side; ++u) {
        const double a = u == 0 ? std::sqrt(1.0 / s) : std::sqrt(2.0 / s);
        for (std::size_t x = 0; x < side; ++x) {
            basis_(u, x) = a * std::cos(std::numbers::pi * (2.0 * static_cast<double>(x) + 1.0) *
                                        static_cast<double>(u) / (2.0 * s));
        }
    }
}

// forward: C X C^T, inverse: C^T Y C
Matrix BlockDct::transform(const Matrix& in, bool inverse) const {
    if (in.rows() != side_ || in.cols() != side_) {
        throw Error(ErrorCode::dimension_mismatch, "DCT input is not a square block of the configured side");
    }
    const std::size_t s = side_;
    auto coef = [&](std::size_t u, std::size_t x) { return inverse ? basis_(x, u) : basis_(u, x); };

    Matrix tmp(s, s);
    for (std::size_t u = 0; u < s; ++u) {
        for (std::size_t c = 0; c < s; ++c) {
            double acc = 0.0;
            for (std::size_t x = 0; x < s; ++x) acc += coef(u, x) * in(x, c);
            tmp(u, c) = acc;
        }
    }
    Matrix out(s, s);
    for (std::size_t u = 0; u < s; ++u) {
        for (std::size_t v = 0; v < s; ++v) {
            double acc = 0.0;
            for (std::size_t c = 0; c < s; ++c) acc += tmp(u, c) * coef(v, c);
            out(u, v) = acc;
        }
    }
    return out;
}

Matrix BlockDct::forward(const Matrix& block) const { return transform(block, false); }
Matrix BlockDct::inverse(const Matrix& coeffs) const { return transform(coeffs, true); }

Matrix dct2(const Matrix& block) {
    if (block.rows() != block.cols()) throw Error(ErrorCode::dimension_mismatch, "dct2: block not square");
    return BlockDct(block.rows()).forward(block);
}

Matrix idct2(const Matrix& coeffs) {
    if (coeffs.rows() != coeffs.cols()) throw Error(ErrorCode::dimension_mismatch, "idct2: block not square");
    return BlockDct(coeffs.rows()).inverse(coeffs);
}

CoefficientCube forward_transform(const BlockGrid& grid) {
    const BlockDct dct(grid.block_side);
    CoefficientCube cube;
    cube.block_side = grid.block_side;
    cube.depth = grid.blocks.size();
    cube.values.assign(cube.group_count() * cube.depth, 0.0);
    for (std::size_t n = 0; n < grid.blocks.size(); ++n) {
        const Matrix coeffs = dct.forward(grid.blocks[n]);
        for (std::size_t r = 0; r < grid.block_side; ++r) {
            for (std::size_t c = 0; c < grid.block_side; ++c) cube.at(r, c, n) = coeffs(r, c);
        }
    }
    return cube;
}

BlockGrid inverse_transform(const CoefficientCube& cube) {
    if (cube.values.size() != cube.group_count() * cube.depth) {
        throw Error(ErrorCode::dimension_mismatch, "coefficient cube is inconsistent");
    }
    const BlockDct dct(cube.block_side);
    BlockGrid grid;
    grid.block_side = cube.block_side;
    grid.blocks.reserve(cube.depth);
    Matrix coeffs(cube.block_side, cube.block_side);
    for (std::size_t n = 0; n < cube.depth; ++n) {
        for (std::size_t r = 0; r < cube.block_side; ++r) {
            for (std::size_t c = 0; c < cube.block_side; ++c) coeffs(r, c) = cube.at(r, c, n);
        }
        grid.blocks.push_back(dct.inverse(coeffs));
    }
    return grid;
}

GroupStats describe(std::span<const double> values) {
    GroupStats stats;
    if (values.empty()) return stats;
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        if (v != 0.0) ++stats.sparsity;
    }
    const double n = static_cast<double>(values.size());
    stats.mean = sum / n;
    double sq = 0.0;
    for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
    stats.variance = sq / n;
    return stats;
}

std::vector<CoefficientGroup> group(const CoefficientCube& cube) {
    std::vector<CoefficientGroup> groups(cube.group_count());
    for (std::size_t j = 0; j < groups.size(); ++j) {
        const auto slice = cube.group_values(j);
        const GroupStats stats = describe(slice);
        groups[j] = {j, std::vector<double>(slice.begin(), slice.end()), stats.sparsity, stats.mean,
                     stats.variance};
    }
    return groups;
}

CoefficientCube ungroup(std::span<const CoefficientGroup> groups) {
    const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(groups.size()))));
    if (groups.empty() || side * side != groups.size()) {
        throw Error(ErrorCode::length_mismatch, "group count is not a square number");
    }
    CoefficientCube cube;
    cube.block_side = side;
    cube.depth = groups.front().values.size();
    cube.values.resize(groups.size() * cube.depth);
    for (std::size_t j = 0; j < groups.size(); ++j) {
        if (groups[j].values.size() != cube.depth) {
            throw Error(ErrorCode::length_mismatch, "coefficient groups have unequal lengths");
        }
        std::copy(groups[j].values.begin(), groups[j].values.end(),
                  cube.values.begin() + static_cast<std::ptrdiff_t>(j * cube.depth));
    }
    return cube;
}

}  // namespace sparsecast
