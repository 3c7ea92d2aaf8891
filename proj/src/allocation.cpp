#include "sparsecast/allocation.hpp"

#include "sparsecast/error.hpp"

#include <cmath>

namespace sparsecast {

std::vector<double> lemma1_gains(std::span<const double> variances, std::span<const std::size_t> lengths) {
    if (variances.size() != lengths.size()) {
        throw Error(ErrorCode::length_mismatch, "lemma1_gains: variances and lengths differ in size");
    }
    double total_length = 0.0;
    double weighted_root = 0.0;
    for (std::size_t j = 0; j < variances.size(); ++j) {
        if (lengths[j] == 0) throw Error(ErrorCode::invalid_argument, "lemma1_gains: group length must be >= 1");
        if (!(variances[j] >= 0.0) || !std::isfinite(variances[j])) {
            throw Error(ErrorCode::invalid_argument, "lemma1_gains: variances must be finite and >= 0");
        }
        total_length += static_cast<double>(lengths[j]);
        weighted_root += static_cast<double>(lengths[j]) * std::sqrt(variances[j]);
    }
    if (!(weighted_root > 0.0)) throw Error(ErrorCode::all_variances_zero, "lemma1_gains: all variances are zero");

    const double factor = std::sqrt(total_length / weighted_root);
    std::vector<double> gains(variances.size(), 0.0);
    for (std::size_t j = 0; j < variances.size(); ++j) {
        if (variances[j] > 0.0) gains[j] = factor / std::sqrt(std::sqrt(variances[j]));
    }
    return gains;
}

PowerAllocation PowerAllocation::compute(std::span<const double> variances, std::span<const std::size_t> lengths) {
    PowerAllocation a;
    a.gains = lemma1_gains(variances, lengths);
    a.lengths.assign(lengths.begin(), lengths.end());
    a.variances.assign(variances.begin(), variances.end());
    for (std::size_t m : lengths) a.total_budget_symbols += m;
    return a;
}

double PowerAllocation::average_power() const {
    double power = 0.0;
    for (std::size_t j = 0; j < gains.size(); ++j) {
        power += static_cast<double>(lengths[j]) * gains[j] * gains[j] * variances[j];
    }
    return power / static_cast<double>(total_budget_symbols);
}

std::vector<double> mmse_estimate(std::span<const double> received, double gain, double variance,
                                  double mean, double noise_variance) {
    std::vector<double> out(received.size(), mean);
    const double denom = gain * gain * variance + noise_variance;
    if (gain == 0.0 || variance == 0.0 || denom == 0.0) return out;
    const double factor = gain * variance / denom;
    for (std::size_t i = 0; i < received.size(); ++i) out[i] = factor * received[i] + mean;
    return out;
}

}  // namespace sparsecast
