#pragma once

#include "sparsecast/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsecast {

struct SparsifyResult {
    std::vector<double> values;
    std::size_t sparsity = 0;
};

/// Zero every entry with |x| < tau.
SparsifyResult sparsify(std::span<const double> x, double tau);

/// The S allowed measurement counts, strictly increasing, ending at N.
class MeasurementLevels {
public:
    explicit MeasurementLevels(std::vector<std::uint32_t> levels);

    /// {N/16, N/8, 3N/16, N/4, 3N/8, N/2, 3N/4, N}, rounded, duplicates and
    /// zeros dropped (small N collapses the table).
    static MeasurementLevels defaults(std::size_t n);

    std::size_t size() const noexcept { return levels_.size(); }
    std::uint32_t operator[](std::size_t i) const noexcept { return levels_[i]; }
    std::uint32_t full() const noexcept { return levels_.back(); }
    std::span<const std::uint32_t> values() const noexcept { return levels_; }

    /// ceil(log2 S): bits needed per level index.
    std::size_t index_bits() const noexcept;

private:
    std::vector<std::uint32_t> levels_;
};

struct LevelChoice {
    std::size_t measurements = 0;
    std::size_t level_index = 0;
};

/// Smallest level >= ceil(oversampling * k); demands beyond the last level
/// below N select N.
LevelChoice choose_level(std::size_t sparsity, double oversampling, const MeasurementLevels& levels,
                         std::size_t n);

/// Seed of the matrix for frequency index j (0-based) within a session.
std::uint64_t group_matrix_seed(std::uint64_t session_seed, std::size_t frequency_index);

/// Row-orthonormal pseudo-random mu x N matrix. mu == N is the identity and is
/// kept implicit.
class MeasurementMatrix {
public:
    static MeasurementMatrix generate(std::uint64_t seed, std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint64_t seed() const noexcept { return seed_; }
    bool is_identity() const noexcept { return rows_ == cols_; }

    /// Dense entries (materialized for the identity).
    Matrix dense() const;
    /// Dense storage; empty for the identity.
    const Matrix& entries() const noexcept { return entries_; }

    /// y = Phi x
    void apply(std::span<const double> x, std::span<double> y) const;
    /// x = Phi^T y
    void apply_transpose(std::span<const double> y, std::span<double> x) const;

private:
    MeasurementMatrix(std::uint64_t seed, std::size_t rows, std::size_t cols, Matrix entries)
        : seed_(seed), rows_(rows), cols_(cols), entries_(std::move(entries)) {}

    std::uint64_t seed_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Matrix entries_;
};

/// y~ = Phi x_centered.
std::vector<double> measure(const MeasurementMatrix& phi, std::span<const double> x_centered);

}  // namespace sparsecast
