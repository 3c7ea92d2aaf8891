#pragma once

#include "sparsecast/amp.hpp"
#include "sparsecast/codec.hpp"
#include "sparsecast/image.hpp"
#include "sparsecast/softcast.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sparsecast {

enum class CodecKind { sparsecast, softcast };

std::string_view codec_name(CodecKind kind) noexcept;
CodecKind parse_codec(std::string_view name);

struct SweepSpec {
    std::vector<double> csnr_points;
    std::size_t trials = 5;
    CodecKind codec = CodecKind::sparsecast;
    SparseCastParams sparsecast;
    AmpConfig amp;
    SoftCastParams softcast;
    std::uint64_t seed_base = 1;
    /// Fill SweepRecord::seconds. Off by default so output is reproducible.
    bool timing = false;
    /// Worker threads for (point, trial) jobs; 0 = hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

struct SweepRecord {
    std::string codec;
    double csnr_req_db = 0.0;
    double csnr_real_db = 0.0;
    double psnr_mean_db = 0.0;
    double psnr_std_db = 0.0;
    std::size_t symbols = 0;
    std::size_t metadata_bits = 0;
    double seconds = 0.0;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// SoftCast threshold whose symbol count matches what SparseCast spends on
/// the same image.
double matched_softcast_threshold(const Frame& image, const SparseCastParams& sparse, std::size_t softcast_block_side);

/// Encodes once, then channel + decode per trial with seed
/// derive_seed(seed_base, {point, trial}). Records follow csnr_points order.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const Frame& image);

inline constexpr std::string_view csv_header =
    "codec,csnr_req_db,csnr_real_db,psnr_mean_db,psnr_std_db,symbols,metadata_bits,seconds";

void write_csv(std::ostream& out, std::span<const SweepRecord> records);
void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path);
std::vector<SweepRecord> read_csv(std::istream& in);

/// Clamped, rounded 8-bit PGM.
void save_reconstruction(const Frame& frame, const std::filesystem::path& path);

/// One row of the 802.11a CSNR threshold table used for report overlays.
struct ReferenceThreshold {
    std::string_view constellation;
    std::string_view code_rates;
    unsigned bits_per_symbol;
    double uncoded_db;
    std::optional<double> coded_1_2_db;
    std::optional<double> coded_2_3_db;
    std::optional<double> coded_3_4_db;
};

std::span<const ReferenceThreshold> reference_thresholds() noexcept;

/// Highest-throughput digital mode whose threshold is at or below csnr_db.
struct DigitalMode {
    std::string label;  // e.g. "16-QAM 3/4"
    double threshold_db = 0.0;
    double info_bits_per_symbol = 0.0;
};
std::optional<DigitalMode> best_digital_mode(double csnr_db);

/// Sweep CSV plus overlay columns: best_digital, digital_threshold_db,
/// digital_bits_per_symbol (empty when no mode works).
void write_report(std::ostream& out, std::span<const SweepRecord> records);

}  // namespace sparsecast
