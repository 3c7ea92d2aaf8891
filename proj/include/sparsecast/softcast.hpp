#pragma once
// Linear baseline: large blocks, whole coefficient groups dropped by energy,
// the rest power-scaled and sent uncoded, MMSE at the receiver.

#include "sparsecast/channel.hpp"
#include "sparsecast/image.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsecast {

struct SoftCastParams {
    std::size_t block_side = 32;
    /// Groups with sum of squares below this are not sent.
    double threshold = 0.0;
};

struct SoftCastRecord {
    float mean = 0.0f;
    float variance = 0.0f;

    friend bool operator==(const SoftCastRecord&, const SoftCastRecord&) = default;
};

/// Header (version, side, width, height: 48 bits), a retained-group bitmap of
/// side^2 bits, then mean and variance as f32 for each retained group.
struct SoftCastMetadata {
    std::uint8_t version = 1;
    std::uint8_t block_side = 0;
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::vector<bool> retained;
    std::vector<SoftCastRecord> records;  // one per retained group, ascending index

    std::size_t block_count() const noexcept;
    std::size_t retained_count() const noexcept;
    std::size_t total_bits() const noexcept { return 48 + retained.size() + 64 * records.size(); }

    friend bool operator==(const SoftCastMetadata&, const SoftCastMetadata&) = default;
};

std::vector<std::uint8_t> serialize_softcast_metadata(const SoftCastMetadata& metadata);
SoftCastMetadata deserialize_softcast_metadata(std::span<const std::uint8_t> bytes);

struct SoftCastEncoded {
    SoftCastMetadata metadata;
    SymbolStream stream;
};

SoftCastEncoded softcast_encode(const Frame& frame, const SoftCastParams& params);
std::vector<LayoutRecord> softcast_layout(const SoftCastMetadata& metadata);
Frame softcast_decode(const SymbolStream& received, const SoftCastMetadata& metadata, double noise_variance);

/// Sum of squares of every coefficient group, frequency-index order.
std::vector<double> softcast_group_energies(const Frame& frame, std::size_t block_side);

/// Threshold that keeps as many of the highest-energy groups as fit in
/// symbol_budget complex symbols (at least one).
double softcast_threshold_for_budget(const Frame& frame, std::size_t block_side, std::size_t symbol_budget);

}  // namespace sparsecast
