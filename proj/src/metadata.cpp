#include "sparsecast/metadata.hpp"

#include "sparsecast/bitstream.hpp"
#include "sparsecast/cs.hpp"
#include "sparsecast/error.hpp"

#include <bit>
#include <string>

namespace sparsecast {

std::size_t Metadata::block_count() const noexcept {
    if (block_side == 0) return 0;
    return (std::size_t{width} / block_side) * (std::size_t{height} / block_side);
}

std::size_t Metadata::index_bits() const noexcept {
    const std::size_t s = level_table.size();
    return s <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(s - 1));
}

namespace {

void validate(const Metadata& m) {
    if (m.block_side == 0) throw Error(ErrorCode::invalid_argument, "metadata: block side is zero");
    if (m.width % m.block_side != 0 || m.height % m.block_side != 0 || m.width == 0 || m.height == 0) {
        throw Error(ErrorCode::dimension_not_divisible, "metadata: frame size not divisible by block side");
    }
    if (m.level_table.empty() || m.level_table.size() > 0xffff) {
        throw Error(ErrorCode::invalid_argument, "metadata: level table size out of range");
    }
    const MeasurementLevels levels(m.level_table);
    if (levels.full() != m.block_count()) {
        throw Error(ErrorCode::invalid_argument, "metadata: last level must equal the block count");
    }
    if (m.groups.size() != m.group_count()) {
        throw Error(ErrorCode::length_mismatch, "metadata: group record count != block_side^2");
    }
    for (const auto& g : m.groups) {
        if (g.level_index >= m.level_table.size()) {
            throw Error(ErrorCode::invalid_argument, "metadata: level index out of range");
        }
    }
}

}  // namespace

std::vector<std::uint8_t> serialize_metadata(const Metadata& m) {
    if (m.version != Metadata::current_version) {
        throw Error(ErrorCode::version_mismatch, "metadata: unsupported version " + std::to_string(m.version));
    }
    validate(m);
    BitWriter w;
    w.put_le(m.version, 1);
    w.put_le(m.block_side, 1);
    w.put_le(m.width, 2);
    w.put_le(m.height, 2);
    w.put_le(m.session_seed, 8);
    w.put_le(m.level_table.size(), 2);
    for (std::uint32_t level : m.level_table) w.put_le(level, 4);
    const std::size_t index_bits = m.index_bits();
    for (const auto& g : m.groups) {
        w.put_f32(g.mean);
        w.put_f32(g.variance);
        w.put_bits(g.level_index, index_bits);
    }
    return std::move(w).finish();
}

Metadata deserialize_metadata(std::span<const std::uint8_t> bytes) {
    BitReader r(bytes);
    Metadata m;
    m.version = static_cast<std::uint8_t>(r.get_le(1));
    if (m.version != Metadata::current_version) {
        throw Error(ErrorCode::version_mismatch, "metadata: unsupported version " + std::to_string(m.version));
    }
    m.block_side = static_cast<std::uint8_t>(r.get_le(1));
    m.width = static_cast<std::uint16_t>(r.get_le(2));
    m.height = static_cast<std::uint16_t>(r.get_le(2));
    m.session_seed = r.get_le(8);
    const auto level_count = static_cast<std::size_t>(r.get_le(2));
    m.level_table.resize(level_count);
    for (auto& level : m.level_table) level = static_cast<std::uint32_t>(r.get_le(4));
    const std::size_t index_bits = m.index_bits();
    m.groups.resize(m.group_count());
    for (auto& g : m.groups) {
        g.mean = r.get_f32();
        g.variance = r.get_f32();
        g.level_index = static_cast<std::uint32_t>(r.get_bits(index_bits));
    }
    if (r.bits_remaining() >= 8) throw Error(ErrorCode::length_mismatch, "metadata: trailing bytes");
    validate(m);
    return m;
}

}  // namespace sparsecast
