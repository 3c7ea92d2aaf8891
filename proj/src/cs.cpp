#include "sparsecast/cs.hpp"

#include "sparsecast/error.hpp"
#include "sparsecast/kernels.hpp"
#include "sparsecast/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace sparsecast {

SparsifyResult sparsify(std::span<const double> x, double tau) {
    if (!(tau >= 0.0)) throw Error(ErrorCode::invalid_argument, "sparsity threshold must be >= 0");
    SparsifyResult out;
    out.values.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = std::abs(x[i]) >= tau ? x[i] : 0.0;
        out.values[i] = v;
        if (v != 0.0) ++out.sparsity;
    }
    return out;
}

MeasurementLevels::MeasurementLevels(std::vector<std::uint32_t> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw Error(ErrorCode::invalid_argument, "measurement level table is empty");
    if (levels_.front() == 0) throw Error(ErrorCode::invalid_argument, "measurement levels must be positive");
    if (!std::is_sorted(levels_.begin(), levels_.end()) ||
        std::adjacent_find(levels_.begin(), levels_.end()) != levels_.end()) {
        throw Error(ErrorCode::invalid_argument, "measurement levels must be strictly increasing");
    }
}

MeasurementLevels MeasurementLevels::defaults(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "group length must be positive");
    static constexpr int sixteenths[] = {1, 2, 3, 4, 6, 8, 12, 16};
    std::vector<std::uint32_t> levels;
    for (int s : sixteenths) {
        const auto level = static_cast<std::uint32_t>(std::lround(static_cast<double>(n) * s / 16.0));
        if (level > 0 && (levels.empty() || level > levels.back())) levels.push_back(level);
    }
    return MeasurementLevels(std::move(levels));
}

std::size_t MeasurementLevels::index_bits() const noexcept {
    return levels_.size() <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(levels_.size() - 1));
}

LevelChoice choose_level(std::size_t sparsity, double oversampling, const MeasurementLevels& levels,
                         std::size_t n) {
    if (sparsity > n) throw Error(ErrorCode::invalid_argument, "sparsity exceeds group length");
    if (!(oversampling > 1.0)) throw Error(ErrorCode::invalid_argument, "oversampling must exceed 1");
    if (levels.full() != n) {
        throw Error(ErrorCode::invalid_argument,
                    "last measurement level " + std::to_string(levels.full()) + " != N " + std::to_string(n));
    }
    const double demand = std::ceil(oversampling * static_cast<double>(sparsity));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (static_cast<double>(levels[i]) >= demand) return {levels[i], i};
    }
    return {n, levels.size() - 1};
}

std::uint64_t group_matrix_seed(std::uint64_t session_seed, std::size_t frequency_index) {
    return derive_seed(session_seed, {0x6d6174726978ULL, frequency_index});
}

MeasurementMatrix MeasurementMatrix::generate(std::uint64_t seed, std::size_t rows, std::size_t cols) {
    if (rows == 0 || rows > cols) {
        throw Error(ErrorCode::invalid_argument, "measurement matrix needs 1 <= rows <= cols");
    }
    if (rows == cols) return MeasurementMatrix(seed, rows, cols, Matrix{});

    Matrix q(rows, cols);
    GaussianSource source(seed);
    for (double& v : q.values()) v = source.normal();

    // Classical Gram-Schmidt with one reorthogonalization pass over the rows,
    // i.e. a thin QR of the transpose keeping the Q factor.
    const auto& k = simd::kernels();
    std::vector<double> proj(rows);
    std::vector<double> correction(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        double* v = q.data() + i * cols;
        for (int pass = 0; pass < 2 && i > 0; ++pass) {
            k.gemv(q.data(), i, cols, v, proj.data());
            k.gemv_t(q.data(), i, cols, proj.data(), correction.data());
            for (std::size_t c = 0; c < cols; ++c) v[c] -= correction[c];
        }
        const double norm = std::sqrt(k.dot(v, v, cols));
        if (!(norm > 1e-8)) throw Error(ErrorCode::non_finite, "measurement matrix rows are degenerate");
        const double inv = 1.0 / norm;
        for (std::size_t c = 0; c < cols; ++c) v[c] *= inv;
    }
    return MeasurementMatrix(seed, rows, cols, std::move(q));
}

Matrix MeasurementMatrix::dense() const {
    if (!is_identity()) return entries_;
    Matrix eye(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) eye(i, i) = 1.0;
    return eye;
}

void MeasurementMatrix::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_) {
        throw Error(ErrorCode::length_mismatch, "measurement: vector length does not match matrix");
    }
    if (is_identity()) {
        std::copy(x.begin(), x.end(), y.begin());
        return;
    }
    simd::kernels().gemv(entries_.data(), rows_, cols_, x.data(), y.data());
}

void MeasurementMatrix::apply_transpose(std::span<const double> y, std::span<double> x) const {
    if (x.size() != cols_ || y.size() != rows_) {
        throw Error(ErrorCode::length_mismatch, "measurement: vector length does not match matrix");
    }
    if (is_identity()) {
        std::copy(y.begin(), y.end(), x.begin());
        return;
    }
    simd::kernels().gemv_t(entries_.data(), rows_, cols_, y.data(), x.data());
}

std::vector<double> measure(const MeasurementMatrix& phi, std::span<const double> x_centered) {
    std::vector<double> y(phi.rows());
    phi.apply(x_centered, y);
    return y;
}

}  // namespace sparsecast
