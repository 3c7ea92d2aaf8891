#pragma once
// Side information the SparseCast decoder needs, and its byte layout.
//
//   offset  size  field
//   0       1     version (1)
//   1       1     block side
//   2       2     frame width, LE
//   4       2     frame height, LE
//   6       8     session seed, LE
//   14      2     level count S, LE
//   16      4S    level table, u32 LE each
//   16+4S   ...   b = side^2 group records, bit-packed MSB first:
//                 mean (f32 bits), variance (f32 bits), level index (ceil(log2 S) bits)
//
// The record stream is zero-padded to a whole byte. Fixed header is
// 128 + 32 S bits; records cost b (64 + ceil(log2 S)) bits.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsecast {

struct GroupRecord {
    float mean = 0.0f;
    float variance = 0.0f;
    std::uint32_t level_index = 0;

    friend bool operator==(const GroupRecord&, const GroupRecord&) = default;
};

struct Metadata {
    static constexpr std::uint8_t current_version = 1;

    std::uint8_t version = current_version;
    std::uint8_t block_side = 0;
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::uint64_t session_seed = 0;
    std::vector<std::uint32_t> level_table;
    std::vector<GroupRecord> groups;  // frequency-index order

    std::size_t group_count() const noexcept { return std::size_t{block_side} * block_side; }
    std::size_t block_count() const noexcept;
    std::size_t index_bits() const noexcept;
    std::size_t fixed_header_bits() const noexcept { return 128 + 32 * level_table.size(); }
    std::size_t group_payload_bits() const noexcept { return groups.size() * (64 + index_bits()); }
    std::size_t total_bits() const noexcept { return fixed_header_bits() + group_payload_bits(); }

    /// Measurement count of group j.
    std::size_t measurements(std::size_t j) const { return level_table.at(groups.at(j).level_index); }

    friend bool operator==(const Metadata&, const Metadata&) = default;
};

std::vector<std::uint8_t> serialize_metadata(const Metadata& metadata);
Metadata deserialize_metadata(std::span<const std::uint8_t> bytes);

}  // namespace sparsecast
