#include "sparsecast/codec.hpp"

#include "sparsecast/allocation.hpp"
#include "sparsecast/error.hpp"
#include "sparsecast/kernels.hpp"
#include "sparsecast/parallel.hpp"
#include "sparsecast/transform.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace sparsecast {

namespace {

MeasurementLevels levels_for(const SparseCastParams& params, std::size_t n) {
    if (params.levels.empty()) return MeasurementLevels::defaults(n);
    MeasurementLevels levels(params.levels);
    if (levels.full() != n) {
        throw Error(ErrorCode::invalid_argument, "encode: last measurement level must equal the block count " +
                                                     std::to_string(n));
    }
    return levels;
}

void check_params(const Frame& frame, const SparseCastParams& params) {
    if (params.block_side < 2 || params.block_side > 255) {
        throw Error(ErrorCode::invalid_argument, "encode: block side must be in [2, 255]");
    }
    if (!(params.tau >= 0.0) || !std::isfinite(params.tau)) {
        throw Error(ErrorCode::invalid_argument, "encode: tau must be finite and non-negative");
    }
    if (frame.width == 0 || frame.height == 0 || frame.width > 0xffff || frame.height > 0xffff) {
        throw Error(ErrorCode::invalid_argument, "encode: frame size out of range");
    }
    if (frame.width % params.block_side != 0 || frame.height % params.block_side != 0) {
        throw Error(ErrorCode::dimension_not_divisible, "encode: frame size not divisible by block side");
    }
    for (double p : frame.pixels) {
        if (!std::isfinite(p)) throw Error(ErrorCode::non_finite, "encode: non-finite pixel");
    }
}

std::vector<double> gains_or_zero(std::span<const double> variances, std::span<const std::size_t> lengths) {
    try {
        return lemma1_gains(variances, lengths);
    } catch (const Error& e) {
        // Every group constant: the metadata alone reconstructs the frame.
        if (e.code() != ErrorCode::all_variances_zero) throw;
        return std::vector<double>(variances.size(), 0.0);
    }
}

}  // namespace

std::vector<LayoutRecord> expected_layout(const Metadata& metadata) {
    std::vector<std::size_t> indices(metadata.groups.size());
    std::vector<std::size_t> counts(metadata.groups.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t j = 0; j < counts.size(); ++j) counts[j] = metadata.measurements(j);
    return make_layout(indices, counts);
}

std::vector<double> gains_from_metadata(const Metadata& metadata) {
    std::vector<double> variances(metadata.groups.size());
    std::vector<std::size_t> lengths(metadata.groups.size());
    for (std::size_t j = 0; j < variances.size(); ++j) {
        variances[j] = static_cast<double>(metadata.groups[j].variance);
        lengths[j] = metadata.measurements(j);
    }
    return gains_or_zero(variances, lengths);
}

EncodedImage encode(const Frame& frame, const SparseCastParams& params) {
    check_params(frame, params);
    const std::size_t side = params.block_side;
    const std::size_t n = (frame.width / side) * (frame.height / side);
    const MeasurementLevels levels = levels_for(params, n);

    const CoefficientCube cube = forward_transform(partition(frame, side));
    const std::size_t b = cube.group_count();

    EncodedImage out;
    Metadata& meta = out.metadata;
    meta.block_side = static_cast<std::uint8_t>(side);
    meta.width = static_cast<std::uint16_t>(frame.width);
    meta.height = static_cast<std::uint16_t>(frame.height);
    meta.session_seed = params.session_seed;
    meta.level_table.assign(levels.values().begin(), levels.values().end());
    meta.groups.resize(b);
    out.plan.groups.resize(b);

    std::vector<std::vector<double>> sources(b);
    for (std::size_t j = 0; j < b; ++j) {
        const auto raw = cube.group_values(j);
        SparsifyResult sp = sparsify(raw, params.tau);
        const LevelChoice choice = choose_level(sp.sparsity, params.oversampling, levels, n);
        if (choice.measurements == n) {
            sources[j].assign(raw.begin(), raw.end());
        } else {
            sources[j] = std::move(sp.values);
        }
        const GroupStats stats = describe(sources[j]);
        meta.groups[j] = {static_cast<float>(stats.mean), static_cast<float>(stats.variance),
                          static_cast<std::uint32_t>(choice.level_index)};
        out.plan.groups[j].measurements = choice.measurements;
        out.plan.groups[j].sparsity = sp.sparsity;
        out.plan.groups[j].matrix_seed = group_matrix_seed(params.session_seed, j);
    }

    const std::vector<double> gains = gains_from_metadata(meta);
    std::vector<std::vector<double>> measured(b);
    parallel_for(b, [&](std::size_t j) {
        GroupPlan& plan = out.plan.groups[j];
        plan.gain = gains[j];
        const double mean = static_cast<double>(meta.groups[j].mean);
        std::vector<double> centered(sources[j].size());
        for (std::size_t i = 0; i < centered.size(); ++i) centered[i] = sources[j][i] - mean;
        const auto phi = MeasurementMatrix::generate(plan.matrix_seed, plan.measurements, n);
        std::vector<double> y = measure(phi, centered);
        for (double& v : y) v *= plan.gain;
        measured[j] = std::move(y);
    });

    out.stream = map_symbols(measured);
    out.plan.total_symbols = out.stream.total_symbols();
    return out;
}

SparseCastDecoder::SparseCastDecoder(Metadata metadata, AmpConfig amp)
    : metadata_(std::move(metadata)), amp_(amp) {
    // Round-trip validation without duplicating the checks.
    metadata_ = deserialize_metadata(serialize_metadata(metadata_));
    amp_.validate();
    gains_ = gains_from_metadata(metadata_);
    layout_ = expected_layout(metadata_);

    const std::size_t b = metadata_.groups.size();
    const std::size_t n = metadata_.block_count();
    matrices_.resize(b);
    row_sums_.resize(b);
    parallel_for(b, [&](std::size_t j) {
        const std::size_t mu = metadata_.measurements(j);
        if (mu == n || gains_[j] == 0.0) return;
        auto phi = MeasurementMatrix::generate(group_matrix_seed(metadata_.session_seed, j), mu, n);
        const std::vector<double> ones(n, 1.0);
        row_sums_[j].resize(mu);
        phi.apply(ones, row_sums_[j]);
        matrices_[j] = std::move(phi);
    });
}

Frame SparseCastDecoder::decode(const SymbolStream& received, double noise_variance, DecodeReport* report) const {
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
        throw Error(ErrorCode::invalid_argument, "decode: noise variance must be finite and non-negative");
    }
    SymbolStream stream{received.symbols, layout_};
    const auto parts = unmap_symbols(stream);
    for (const auto& s : received.symbols) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw Error(ErrorCode::non_finite, "decode: non-finite received symbol");
        }
    }

    const std::size_t b = metadata_.groups.size();
    const std::size_t n = metadata_.block_count();
    std::vector<CoefficientGroup> groups(b);
    std::vector<DecodeReport> partial(b);

    parallel_for(b, [&](std::size_t j) {
        const double mean = static_cast<double>(metadata_.groups[j].mean);
        const double variance = static_cast<double>(metadata_.groups[j].variance);
        const double g = gains_[j];
        const std::size_t mu = metadata_.measurements(j);
        const std::vector<double>& y = parts[j];
        CoefficientGroup& out = groups[j];
        out.frequency_index = j;

        if (g == 0.0 || variance == 0.0) {
            out.values.assign(n, mean);
            partial[j].constant_groups = 1;
            return;
        }
        if (mu == n) {
            out.values = mmse_estimate(y, g, variance, mean, noise_variance);
            partial[j].mmse_groups = 1;
            return;
        }

        // The centered vector is dense; shift the measurements back so AMP
        // sees Phi x with x itself sparse.
        const MeasurementMatrix& phi = *matrices_[j];
        const auto& ones = row_sums_[j];
        std::vector<double> shifted(mu);
        for (std::size_t i = 0; i < mu; ++i) shifted[i] = y[i] / g + mean * ones[i];
        AmpResult r = amp_recover(shifted, phi, amp_);
        partial[j].amp_groups = 1;
        partial[j].amp_iterations_total = r.iterations_used;
        if (r.diverged) {
            partial[j].amp_fallbacks = 1;
            std::vector<double> back(mu);
            for (std::size_t i = 0; i < mu; ++i) back[i] = y[i] / g;
            out.values.assign(n, 0.0);
            phi.apply_transpose(back, out.values);
            for (double& v : out.values) v += mean;
        } else {
            out.values = std::move(r.estimate);
        }
    });

    if (report) {
        *report = {};
        for (const auto& p : partial) {
            report->amp_groups += p.amp_groups;
            report->amp_fallbacks += p.amp_fallbacks;
            report->mmse_groups += p.mmse_groups;
            report->constant_groups += p.constant_groups;
            report->amp_iterations_total += p.amp_iterations_total;
        }
    }

    const CoefficientCube cube = ungroup(groups);
    return reassemble(inverse_transform(cube), metadata_.width, metadata_.height, Clamp::yes);
}

Frame decode(const SymbolStream& received, const Metadata& metadata, double noise_variance, const AmpConfig& amp) {
    return SparseCastDecoder(metadata, amp).decode(received, noise_variance);
}

}  // namespace sparsecast
