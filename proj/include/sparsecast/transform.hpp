#pragma once

#include "sparsecast/image.hpp"
#include "sparsecast/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sparsecast {

/// Orthonormal type-II 2D DCT for square blocks of a fixed side.
class BlockDct {
public:
    explicit BlockDct(std::size_t side);

    std::size_t side() const noexcept { return side_; }
    Matrix forward(const Matrix& block) const;
    Matrix inverse(const Matrix& coeffs) const;

private:
    Matrix transform(const Matrix& in, bool inverse) const;

    std::size_t side_;
    Matrix basis_;  // basis_(u, x) = a(u) cos(pi (2x + 1) u / 2s)
};

Matrix dct2(const Matrix& block);
Matrix idct2(const Matrix& coeffs);

/// DCT coefficients of all blocks, stored frequency-major: the N coefficients
/// sharing frequency (r, c) are contiguous, so each group is one slice.
struct CoefficientCube {
    std::size_t block_side = 0;
    std::size_t depth = 0;  // N, number of blocks
    std::vector<double> values;

    std::size_t group_count() const noexcept { return block_side * block_side; }
    double& at(std::size_t r, std::size_t c, std::size_t n) noexcept {
        return values[(r * block_side + c) * depth + n];
    }
    double at(std::size_t r, std::size_t c, std::size_t n) const noexcept {
        return values[(r * block_side + c) * depth + n];
    }
    std::span<const double> group_values(std::size_t j) const noexcept {
        return {values.data() + j * depth, depth};
    }
};

CoefficientCube forward_transform(const BlockGrid& grid);
BlockGrid inverse_transform(const CoefficientCube& cube);

struct GroupStats {
    double mean = 0.0;
    double variance = 0.0;  // population convention, about the mean
    std::size_t sparsity = 0;
};

GroupStats describe(std::span<const double> values);

/// The vector x_j: coefficient (r, c) of every block in scan order, with
/// j = r * side + c (0-based).
struct CoefficientGroup {
    std::size_t frequency_index = 0;
    std::vector<double> values;
    std::size_t sparsity = 0;
    double mean = 0.0;
    double variance = 0.0;
};

std::vector<CoefficientGroup> group(const CoefficientCube& cube);
CoefficientCube ungroup(std::span<const CoefficientGroup> groups);

}  // namespace sparsecast
