#include "sparsecast/softcast.hpp"

#include "sparsecast/allocation.hpp"
#include "sparsecast/bitstream.hpp"
#include "sparsecast/error.hpp"
#include "sparsecast/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace sparsecast {

std::size_t SoftCastMetadata::block_count() const noexcept {
    if (block_side == 0) return 0;
    return (std::size_t{width} / block_side) * (std::size_t{height} / block_side);
}

std::size_t SoftCastMetadata::retained_count() const noexcept {
    return static_cast<std::size_t>(std::count(retained.begin(), retained.end(), true));
}

namespace {

void validate(const SoftCastMetadata& m) {
    if (m.version != 1) throw Error(ErrorCode::version_mismatch, "softcast metadata: unsupported version");
    if (m.block_side == 0 || m.width == 0 || m.height == 0) {
        throw Error(ErrorCode::invalid_argument, "softcast metadata: zero dimension");
    }
    if (m.width % m.block_side != 0 || m.height % m.block_side != 0) {
        throw Error(ErrorCode::dimension_not_divisible, "softcast metadata: frame size not divisible by block side");
    }
    if (m.retained.size() != std::size_t{m.block_side} * m.block_side) {
        throw Error(ErrorCode::length_mismatch, "softcast metadata: bitmap size != block_side^2");
    }
    if (m.records.size() != m.retained_count()) {
        throw Error(ErrorCode::length_mismatch, "softcast metadata: record count != retained groups");
    }
}

}  // namespace

std::vector<std::uint8_t> serialize_softcast_metadata(const SoftCastMetadata& m) {
    validate(m);
    BitWriter w;
    w.put_le(m.version, 1);
    w.put_le(m.block_side, 1);
    w.put_le(m.width, 2);
    w.put_le(m.height, 2);
    for (bool r : m.retained) w.put_bits(r ? 1 : 0, 1);
    for (const auto& rec : m.records) {
        w.put_f32(rec.mean);
        w.put_f32(rec.variance);
    }
    return std::move(w).finish();
}

SoftCastMetadata deserialize_softcast_metadata(std::span<const std::uint8_t> bytes) {
    BitReader r(bytes);
    SoftCastMetadata m;
    m.version = static_cast<std::uint8_t>(r.get_le(1));
    if (m.version != 1) throw Error(ErrorCode::version_mismatch, "softcast metadata: unsupported version");
    m.block_side = static_cast<std::uint8_t>(r.get_le(1));
    m.width = static_cast<std::uint16_t>(r.get_le(2));
    m.height = static_cast<std::uint16_t>(r.get_le(2));
    m.retained.resize(std::size_t{m.block_side} * m.block_side);
    for (std::size_t j = 0; j < m.retained.size(); ++j) m.retained[j] = r.get_bits(1) != 0;
    m.records.resize(m.retained_count());
    for (auto& rec : m.records) {
        rec.mean = r.get_f32();
        rec.variance = r.get_f32();
    }
    if (r.bits_remaining() >= 8) throw Error(ErrorCode::length_mismatch, "softcast metadata: trailing bytes");
    validate(m);
    return m;
}

namespace {

std::vector<double> gains_for(const SoftCastMetadata& m) {
    std::vector<double> variances;
    for (const auto& rec : m.records) variances.push_back(static_cast<double>(rec.variance));
    const std::vector<std::size_t> lengths(variances.size(), m.block_count());
    try {
        return lemma1_gains(variances, lengths);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::all_variances_zero) throw;
        return std::vector<double>(variances.size(), 0.0);
    }
}

CoefficientCube cube_of(const Frame& frame, std::size_t side) {
    if (side < 2 || side > 255) throw Error(ErrorCode::invalid_argument, "softcast: block side must be in [2, 255]");
    if (frame.width % side != 0 || frame.height % side != 0) {
        throw Error(ErrorCode::dimension_not_divisible, "softcast: frame size not divisible by block side");
    }
    return forward_transform(partition(frame, side));
}

double energy(std::span<const double> v) {
    double e = 0.0;
    for (double x : v) e += x * x;
    return e;
}

}  // namespace

std::vector<double> softcast_group_energies(const Frame& frame, std::size_t block_side) {
    const CoefficientCube cube = cube_of(frame, block_side);
    std::vector<double> energies(cube.group_count());
    for (std::size_t j = 0; j < energies.size(); ++j) energies[j] = energy(cube.group_values(j));
    return energies;
}

SoftCastEncoded softcast_encode(const Frame& frame, const SoftCastParams& params) {
    if (std::isnan(params.threshold)) throw Error(ErrorCode::invalid_argument, "softcast: threshold is NaN");
    if (frame.width > 0xffff || frame.height > 0xffff || frame.width == 0 || frame.height == 0) {
        throw Error(ErrorCode::invalid_argument, "softcast: frame size out of range");
    }
    const CoefficientCube cube = cube_of(frame, params.block_side);
    const std::size_t b = cube.group_count();

    SoftCastEncoded out;
    SoftCastMetadata& m = out.metadata;
    m.block_side = static_cast<std::uint8_t>(params.block_side);
    m.width = static_cast<std::uint16_t>(frame.width);
    m.height = static_cast<std::uint16_t>(frame.height);
    m.retained.assign(b, false);
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < b; ++j) {
        const auto values = cube.group_values(j);
        if (energy(values) < params.threshold) continue;
        m.retained[j] = true;
        kept.push_back(j);
        const GroupStats s = describe(values);
        m.records.push_back({static_cast<float>(s.mean), static_cast<float>(s.variance)});
    }
    if (kept.empty()) throw Error(ErrorCode::all_groups_discarded, "softcast: threshold discards every group");

    const std::vector<double> gains = gains_for(m);
    std::vector<std::vector<double>> scaled(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto values = cube.group_values(kept[i]);
        const double mean = static_cast<double>(m.records[i].mean);
        scaled[i].resize(values.size());
        for (std::size_t t = 0; t < values.size(); ++t) scaled[i][t] = gains[i] * (values[t] - mean);
    }
    out.stream = map_symbols(scaled, kept);
    return out;
}

std::vector<LayoutRecord> softcast_layout(const SoftCastMetadata& metadata) {
    std::vector<std::size_t> indices;
    for (std::size_t j = 0; j < metadata.retained.size(); ++j) {
        if (metadata.retained[j]) indices.push_back(j);
    }
    const std::vector<std::size_t> counts(indices.size(), metadata.block_count());
    return make_layout(indices, counts);
}

Frame softcast_decode(const SymbolStream& received, const SoftCastMetadata& metadata, double noise_variance) {
    validate(metadata);
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
        throw Error(ErrorCode::invalid_argument, "softcast decode: noise variance must be finite and non-negative");
    }
    const SymbolStream stream{received.symbols, softcast_layout(metadata)};
    const auto parts = unmap_symbols(stream);
    const std::vector<double> gains = gains_for(metadata);
    const std::size_t n = metadata.block_count();

    std::vector<CoefficientGroup> groups(metadata.retained.size());
    std::size_t r = 0;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        groups[j].frequency_index = j;
        if (!metadata.retained[j]) {
            groups[j].values.assign(n, 0.0);
            continue;
        }
        const auto& rec = metadata.records[r];
        groups[j].values = mmse_estimate(parts[r], gains[r], static_cast<double>(rec.variance),
                                         static_cast<double>(rec.mean), noise_variance);
        ++r;
    }
    return reassemble(inverse_transform(ungroup(groups)), metadata.width, metadata.height, Clamp::yes);
}

double softcast_threshold_for_budget(const Frame& frame, std::size_t block_side, std::size_t symbol_budget) {
    std::vector<double> energies = softcast_group_energies(frame, block_side);
    const std::size_t n = (frame.width / block_side) * (frame.height / block_side);
    const std::size_t per_group = (n + 1) / 2;
    const std::size_t keep = std::clamp<std::size_t>(symbol_budget / per_group, 1, energies.size());
    std::sort(energies.begin(), energies.end(), std::greater<>());
    if (keep == energies.size()) return 0.0;
    return std::nextafter(energies[keep], std::numeric_limits<double>::infinity());
}

}  // namespace sparsecast
