#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace sparsecast {

struct LayoutRecord {
    std::size_t group_index = 0;
    std::size_t symbol_count = 0;
    bool padded = false;  // odd element count; last Q component is filler

    std::size_t element_count() const noexcept { return 2 * symbol_count - (padded ? 1 : 0); }
    friend bool operator==(const LayoutRecord&, const LayoutRecord&) = default;
};

struct SymbolStream {
    std::vector<std::complex<double>> symbols;
    std::vector<LayoutRecord> layout;

    std::size_t total_symbols() const noexcept { return symbols.size(); }
    friend bool operator==(const SymbolStream&, const SymbolStream&) = default;
};

/// Expected layout for groups of the given element counts, in order.
std::vector<LayoutRecord> make_layout(std::span<const std::size_t> group_indices,
                                      std::span<const std::size_t> element_counts);

/// Consecutive element pairs become I + iQ; an odd tail gets Q = 0.
SymbolStream map_symbols(std::span<const std::vector<double>> groups, std::span<const std::size_t> group_indices);
SymbolStream map_symbols(std::span<const std::vector<double>> groups);
std::vector<std::vector<double>> unmap_symbols(const SymbolStream& stream);

inline constexpr double noiseless_csnr_db = std::numeric_limits<double>::infinity();

struct ChannelConfig {
    double csnr_db = noiseless_csnr_db;
    std::uint64_t seed = 0;
};

struct Transmission {
    SymbolStream received;
    double noise_variance = 0.0;   // per real component
    double signal_power = 0.0;     // per real, non-filler component
    double realized_csnr_db = noiseless_csnr_db;
};

/// Complex AWGN with per-component variance P / 10^(csnr/10), P being the
/// empirical per-component power of the non-filler components. Filler
/// components are noised too.
Transmission transmit(const SymbolStream& stream, const ChannelConfig& config);

/// Sample variance of the per-component difference.
double estimate_noise_power(const SymbolStream& sent, const SymbolStream& received);

/// Interleaved little-endian float32 I/Q pairs.
void write_symbols(std::ostream& out, const SymbolStream& stream);
SymbolStream read_symbols(std::istream& in, std::vector<LayoutRecord> layout);

}  // namespace sparsecast
