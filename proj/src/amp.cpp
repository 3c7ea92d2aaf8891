#include "sparsecast/amp.hpp"

#include "sparsecast/error.hpp"
#include "sparsecast/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace sparsecast {

void AmpConfig::validate() const {
    if (max_iterations < 1) throw Error(ErrorCode::invalid_argument, "AMP max_iterations must be >= 1");
    if (!(convergence_tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "AMP tolerance must be > 0");
    if (!(threshold_multiplier > 0.0)) throw Error(ErrorCode::invalid_argument, "AMP threshold multiplier must be > 0");
    if (!(damping >= 0.0 && damping < 1.0)) throw Error(ErrorCode::invalid_argument, "AMP damping must be in [0, 1)");
}

AmpResult amp_recover(std::span<const double> measurements, const MeasurementMatrix& phi,
                      const AmpConfig& config) {
    config.validate();
    const std::size_t mu = phi.rows();
    const std::size_t n = phi.cols();
    if (mu >= n) throw Error(ErrorCode::invalid_argument, "AMP needs fewer measurements than unknowns");
    if (measurements.size() != mu) throw Error(ErrorCode::length_mismatch, "AMP: measurement length != rows");
    if (!std::all_of(measurements.begin(), measurements.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorCode::non_finite, "AMP: non-finite measurement");
    }

    const auto& k = simd::kernels();
    const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(mu));
    const double root_mu = std::sqrt(static_cast<double>(mu));

    std::vector<double> y(mu);
    for (std::size_t i = 0; i < mu; ++i) y[i] = scale * measurements[i];

    AmpResult result;
    std::vector<double> x(n, 0.0);
    std::vector<double> z = y;
    std::vector<double> pseudo(n);
    std::vector<double> next(n);
    std::vector<double> ax(mu);

    const double initial_norm = std::sqrt(k.dot(z.data(), z.data(), mu));
    double norm = initial_norm;
    result.final_residual_norm = norm;
    if (initial_norm == 0.0) {
        result.estimate = std::move(x);
        result.iterations_used = 1;
        result.converged = true;
        return result;
    }

    std::vector<double> best = x;
    double best_norm = initial_norm;

    for (int t = 1; t <= config.max_iterations; ++t) {
        result.iterations_used = t;

        // pseudo-data x + A^T z
        phi.apply_transpose(z, pseudo);
        ++result.matvec_products;
        for (std::size_t i = 0; i < n; ++i) pseudo[i] = x[i] + scale * pseudo[i];

        const double theta = config.threshold_multiplier * norm / root_mu;
        const std::size_t active = k.soft_threshold(pseudo.data(), theta, next.data(), n);
        if (config.damping > 0.0) {
            for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 - config.damping) * next[i] + config.damping * x[i];
        }

        // z <- y - A x + (1/delta) z <eta'>, with <eta'> = active / N
        phi.apply(next, ax);
        ++result.matvec_products;
        const double onsager = static_cast<double>(active) / static_cast<double>(mu);
        for (std::size_t i = 0; i < mu; ++i) z[i] = y[i] - scale * ax[i] + onsager * z[i];
        x.swap(next);

        const double prev = norm;
        norm = std::sqrt(k.dot(z.data(), z.data(), mu));
        result.final_residual_norm = norm;

        if (!std::isfinite(norm) || norm > 10.0 * initial_norm) {
            result.diverged = true;
            result.estimate = std::move(best);
            result.final_residual_norm = best_norm;
            return result;
        }
        if (norm < best_norm) {
            best_norm = norm;
            best = x;
        }
        if (std::abs(norm - prev) < config.convergence_tolerance * prev ||
            norm < config.convergence_tolerance * initial_norm) {
            result.converged = true;
            break;
        }
    }
    result.estimate = std::move(x);
    return result;
}

}  // namespace sparsecast
