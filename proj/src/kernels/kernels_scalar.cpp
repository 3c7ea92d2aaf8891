#include "sparsecast/kernels.hpp"

namespace sparsecast::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double sum = (s0 + s1) + (s2 + s3);
    for (std::size_t i = n4; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(a + r * cols, x, cols);
}

void gemv_t_scalar(const double* a, std::size_t rows, std::size_t cols, const double* z,
                   double* out) {
    for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
    for (std::size_t r = 0; r < rows; ++r) axpy_scalar(z[r], a + r * cols, out, cols);
}

std::size_t soft_threshold_scalar(const double* in, double theta, double* out, std::size_t n) {
    std::size_t active = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = in[i];
        if (v > theta) {
            out[i] = v - theta;
            ++active;
        } else if (v < -theta) {
            out[i] = v + theta;
            ++active;
        } else {
            out[i] = 0.0;
        }
    }
    return active;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{dot_scalar, axpy_scalar, gemv_scalar, gemv_t_scalar,
                                   soft_threshold_scalar};
    return table;
}

}  // namespace sparsecast::simd
