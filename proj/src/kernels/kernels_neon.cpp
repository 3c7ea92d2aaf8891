// NEON variants for aarch64. Two 128-bit accumulators stand in for the four
// reduction lanes so the summation order matches the scalar reference.

#include "sparsecast/kernels.hpp"

#include <arm_neon.h>

namespace sparsecast::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double sum = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
                 (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
    for (std::size_t i = n4; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    const std::size_t n2 = n - n % 2;
    for (std::size_t i = 0; i < n2; i += 2) {
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    }
    for (std::size_t i = n2; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_neon(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_neon(a + r * cols, x, cols);
}

void gemv_t_neon(const double* a, std::size_t rows, std::size_t cols, const double* z,
                 double* out) {
    for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
    for (std::size_t r = 0; r < rows; ++r) axpy_neon(z[r], a + r * cols, out, cols);
}

std::size_t soft_threshold_neon(const double* in, double theta, double* out, std::size_t n) {
    const float64x2_t pos = vdupq_n_f64(theta);
    const float64x2_t neg = vdupq_n_f64(-theta);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t active = 0;
    const std::size_t n2 = n - n % 2;
    for (std::size_t i = 0; i < n2; i += 2) {
        const float64x2_t v = vld1q_f64(in + i);
        const uint64x2_t above = vcgtq_f64(v, pos);
        const uint64x2_t below = vcltq_f64(v, neg);
        float64x2_t r = vbslq_f64(above, vsubq_f64(v, pos), zero);
        r = vbslq_f64(below, vaddq_f64(v, pos), r);
        vst1q_f64(out + i, r);
        const uint64x2_t any = vorrq_u64(above, below);
        active += (vgetq_lane_u64(any, 0) ? 1u : 0u) + (vgetq_lane_u64(any, 1) ? 1u : 0u);
    }
    for (std::size_t i = n2; i < n; ++i) {
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

const KernelTable& neon_kernels() noexcept {
    static const KernelTable table{dot_neon, axpy_neon, gemv_neon, gemv_t_neon,
                                   soft_threshold_neon};
    return table;
}

}  // namespace sparsecast::simd
