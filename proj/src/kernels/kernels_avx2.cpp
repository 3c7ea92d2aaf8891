// AVX2 variants. Only this translation unit carries the avx2 target; callers
// reach it through the dispatch table after a runtime CPU check.

#include "sparsecast/kernels.hpp"

#include <immintrin.h>

#define SPARSECAST_AVX2 __attribute__((target("avx2")))

namespace sparsecast::simd {
namespace {

SPARSECAST_AVX2 double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, prod);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (std::size_t i = n4; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

SPARSECAST_AVX2 void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (std::size_t i = n4; i < n; ++i) y[i] += alpha * x[i];
}

SPARSECAST_AVX2 void gemv_avx2(const double* a, std::size_t rows, std::size_t cols,
                               const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(a + r * cols, x, cols);
}

SPARSECAST_AVX2 void gemv_t_avx2(const double* a, std::size_t rows, std::size_t cols,
                                 const double* z, double* out) {
    for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
    for (std::size_t r = 0; r < rows; ++r) axpy_avx2(z[r], a + r * cols, out, cols);
}

SPARSECAST_AVX2 std::size_t soft_threshold_avx2(const double* in, double theta, double* out,
                                                std::size_t n) {
    const __m256d pos = _mm256_set1_pd(theta);
    const __m256d neg = _mm256_set1_pd(-theta);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t active = 0;
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d v = _mm256_loadu_pd(in + i);
        const __m256d above = _mm256_cmp_pd(v, pos, _CMP_GT_OQ);
        const __m256d below = _mm256_cmp_pd(v, neg, _CMP_LT_OQ);
        __m256d r = _mm256_blendv_pd(zero, _mm256_sub_pd(v, pos), above);
        r = _mm256_blendv_pd(r, _mm256_add_pd(v, pos), below);
        _mm256_storeu_pd(out + i, r);
        active += static_cast<std::size_t>(
            __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_or_pd(above, below)))));
    }
    for (std::size_t i = n4; i < n; ++i) {
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

const KernelTable& avx2_kernels() noexcept {
    static const KernelTable table{dot_avx2, axpy_avx2, gemv_avx2, gemv_t_avx2,
                                   soft_threshold_avx2};
    return table;
}

}  // namespace sparsecast::simd
