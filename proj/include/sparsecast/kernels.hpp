#pragma once
// Dense inner-loop kernels used by the measurement, AMP and DCT paths.
//
// Every backend evaluates reductions in the same order: four interleaved
// partial sums (lane l accumulates elements i with i % 4 == l over the
// largest multiple-of-four prefix), combined as (s0 + s1) + (s2 + s3), then
// the tail added sequentially. Multiplies and adds are never fused. Under
// these rules the scalar, AVX2 and NEON variants produce bit-identical
// results, which keeps seeded measurement matrices reproducible regardless
// of which backend a given machine selects.

#include <cstddef>
#include <span>
#include <string_view>

namespace sparsecast::simd {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y = A x, A row-major rows x cols
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
    // out = A^T z, A row-major rows x cols
    void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* z,
                   double* out);
    // out[i] = sign(in[i]) * max(|in[i]| - theta, 0); returns #{i : |in[i]| > theta}
    std::size_t (*soft_threshold)(const double* in, double theta, double* out, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(__aarch64__)
const KernelTable& neon_kernels() noexcept;
#endif

bool backend_available(Backend backend) noexcept;
const KernelTable& kernels_for(Backend backend);

// Selected once from CPU features, overridable with SPARSECAST_SIMD=scalar|avx2|neon.
Backend active_backend() noexcept;
void set_active_backend(Backend backend);
const KernelTable& kernels() noexcept;

std::string_view backend_name(Backend backend) noexcept;

// Span conveniences over the active backend.
double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace sparsecast::simd
