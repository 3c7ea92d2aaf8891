#pragma once

#include "sparsecast/amp.hpp"
#include "sparsecast/channel.hpp"
#include "sparsecast/cs.hpp"
#include "sparsecast/image.hpp"
#include "sparsecast/metadata.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace sparsecast {

inline constexpr std::uint64_t default_session_seed = 0x5eedca57ULL;

struct SparseCastParams {
    std::size_t block_side = 16;
    double tau = 0.1;
    double oversampling = 3.0;
    /// Empty selects MeasurementLevels::defaults(N).
    std::vector<std::uint32_t> levels;
    std::uint64_t session_seed = default_session_seed;
};

struct GroupPlan {
    std::size_t measurements = 0;
    double gain = 0.0;
    std::uint64_t matrix_seed = 0;
    std::size_t sparsity = 0;  // diagnostic, not transmitted
};

struct TransmissionPlan {
    std::vector<GroupPlan> groups;
    std::size_t total_symbols = 0;
};

struct EncodedImage {
    Metadata metadata;
    SymbolStream stream;
    TransmissionPlan plan;
};

/// partition -> DCT -> group -> sparsify -> level choice -> center -> measure
/// -> Lemma-1 scaling -> I/Q mapping. Groups that end up at mu = N are sent
/// through the identity without thresholding.
EncodedImage encode(const Frame& frame, const SparseCastParams& params);

/// Symbol layout implied by the metadata alone.
std::vector<LayoutRecord> expected_layout(const Metadata& metadata);

/// Gains recomputed from metadata; the encoder uses the same routine so both
/// ends agree bit for bit.
std::vector<double> gains_from_metadata(const Metadata& metadata);

struct DecodeReport {
    std::size_t amp_groups = 0;
    std::size_t amp_fallbacks = 0;
    std::size_t mmse_groups = 0;
    std::size_t constant_groups = 0;
    int amp_iterations_total = 0;
};

/// Rebuilds measurement matrices once from metadata, then decodes any number
/// of received streams.
class SparseCastDecoder {
public:
    explicit SparseCastDecoder(Metadata metadata, AmpConfig amp = {});

    const Metadata& metadata() const noexcept { return metadata_; }
    const std::vector<LayoutRecord>& layout() const noexcept { return layout_; }

    Frame decode(const SymbolStream& received, double noise_variance, DecodeReport* report = nullptr) const;

private:
    Metadata metadata_;
    AmpConfig amp_;
    std::vector<double> gains_;
    std::vector<LayoutRecord> layout_;
    std::vector<std::optional<MeasurementMatrix>> matrices_;
    std::vector<std::vector<double>> row_sums_;  // Phi * 1, for un-centering in the measurement domain
};

Frame decode(const SymbolStream& received, const Metadata& metadata, double noise_variance,
             const AmpConfig& amp = {});

}  // namespace sparsecast
