#pragma once

#include "sparsecast/cs.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sparsecast {

struct AmpConfig {
    int max_iterations = 50;
    /// Soft threshold per iteration: alpha * ||z|| / sqrt(mu).
    double threshold_multiplier = 1.5;
    /// Stop once |(||z_t|| - ||z_{t-1}||)| / ||z_{t-1}|| or ||z_t|| / ||z_0|| drops below this.
    double convergence_tolerance = 1e-6;
    /// x_{t+1} <- (1 - damping) eta(...) + damping x_t
    double damping = 0.0;

    void validate() const;
};

struct AmpResult {
    std::vector<double> estimate;
    int iterations_used = 0;
    double final_residual_norm = 0.0;
    bool converged = false;
    /// Residual blew past 10x its initial norm, or went non-finite. The
    /// estimate is then the lowest-residual iterate seen.
    bool diverged = false;
    /// Products with Phi or Phi^T, each O(mu N).
    std::size_t matvec_products = 0;
};

/// Approximate message passing with soft thresholding and the Onsager term.
/// Phi must have orthonormal rows and fewer rows than columns. Internally the
/// operator is rescaled by sqrt(N / mu) so columns have unit expected norm.
AmpResult amp_recover(std::span<const double> measurements, const MeasurementMatrix& phi,
                      const AmpConfig& config = {});

}  // namespace sparsecast
