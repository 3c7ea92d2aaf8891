#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sparsecast {

/// Per-group scaling for independent zero-mean Gaussian sources sent over
/// AWGN, minimizing total MSE at average power one per real sample:
///
///   g_j = lambda_j^(-1/4) * sqrt( sum_i m_i / sum_i m_i sqrt(lambda_i) )
///
/// Groups with lambda_j == 0 get g_j = 0.
std::vector<double> lemma1_gains(std::span<const double> variances, std::span<const std::size_t> lengths);

struct PowerAllocation {
    std::vector<double> gains;
    std::vector<std::size_t> lengths;
    std::vector<double> variances;
    std::size_t total_budget_symbols = 0;  // sum of lengths, in real samples

    static PowerAllocation compute(std::span<const double> variances, std::span<const std::size_t> lengths);

    /// sum_j m_j g_j^2 lambda_j / sum_j m_j
    double average_power() const;
};

/// Linear MMSE estimate of a Gaussian vector from y = g (x - c) + n, with n of
/// variance noise_variance per component:
///   x^ = g lambda / (g^2 lambda + noise_variance) * y + c
/// Gain zero (or lambda zero) returns the constant c.
std::vector<double> mmse_estimate(std::span<const double> received, double gain, double variance,
                                  double mean, double noise_variance);

}  // namespace sparsecast
