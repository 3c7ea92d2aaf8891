#include "sparsecast/kernels.hpp"

#include "sparsecast/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace sparsecast::simd {
namespace {

Backend detect_backend() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#elif defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

Backend initial_backend() noexcept {
    if (const char* env = std::getenv("SPARSECAST_SIMD")) {
        const std::string want(env);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
            if (want == backend_name(b) && backend_available(b)) return b;
        }
    }
    return detect_backend();
}

std::atomic<Backend>& current() noexcept {
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

}  // namespace

bool backend_available(Backend backend) noexcept {
    switch (backend) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Backend backend) {
    if (!backend_available(backend)) {
        throw Error(ErrorCode::invalid_argument,
                    "SIMD backend not available: " + std::string(backend_name(backend)));
    }
    switch (backend) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2:
            return avx2_kernels();
#endif
#if defined(__aarch64__)
        case Backend::neon:
            return neon_kernels();
#endif
        default:
            return scalar_kernels();
    }
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
    kernels_for(backend);
    current().store(backend, std::memory_order_relaxed);
}

const KernelTable& kernels() noexcept {
    // active backend is always available
    return kernels_for(active_backend());
}

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
        case Backend::neon:
            return "neon";
    }
    return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::length_mismatch, "dot: length mismatch");
    return kernels().dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const double> a) { return kernels().dot(a.data(), a.data(), a.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::length_mismatch, "axpy: length mismatch");
    kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace sparsecast::simd
