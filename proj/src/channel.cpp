#include "sparsecast/channel.hpp"

#include "sparsecast/error.hpp"
#include "sparsecast/rng.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

namespace sparsecast {

std::vector<LayoutRecord> make_layout(std::span<const std::size_t> group_indices,
                                      std::span<const std::size_t> element_counts) {
    if (group_indices.size() != element_counts.size()) {
        throw Error(ErrorCode::length_mismatch, "layout: index and count lists differ in size");
    }
    std::vector<LayoutRecord> layout(group_indices.size());
    for (std::size_t g = 0; g < layout.size(); ++g) {
        layout[g] = {group_indices[g], (element_counts[g] + 1) / 2, element_counts[g] % 2 == 1};
    }
    return layout;
}

SymbolStream map_symbols(std::span<const std::vector<double>> groups, std::span<const std::size_t> group_indices) {
    std::vector<std::size_t> counts(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) counts[g] = groups[g].size();
    SymbolStream stream;
    stream.layout = make_layout(group_indices, counts);
    stream.symbols.reserve(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) / 2 + groups.size());
    for (const auto& y : groups) {
        for (std::size_t i = 0; i + 1 < y.size(); i += 2) stream.symbols.emplace_back(y[i], y[i + 1]);
        if (y.size() % 2 == 1) stream.symbols.emplace_back(y.back(), 0.0);
    }
    return stream;
}

SymbolStream map_symbols(std::span<const std::vector<double>> groups) {
    std::vector<std::size_t> indices(groups.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    return map_symbols(groups, indices);
}

std::vector<std::vector<double>> unmap_symbols(const SymbolStream& stream) {
    std::size_t expected = 0;
    for (const auto& rec : stream.layout) {
        if (rec.symbol_count == 0 && rec.padded) throw Error(ErrorCode::layout_mismatch, "padded empty group");
        expected += rec.symbol_count;
    }
    if (expected != stream.symbols.size()) {
        throw Error(ErrorCode::layout_mismatch, "layout describes " + std::to_string(expected) +
                                                    " symbols, stream has " + std::to_string(stream.symbols.size()));
    }
    std::vector<std::vector<double>> groups;
    groups.reserve(stream.layout.size());
    std::size_t pos = 0;
    for (const auto& rec : stream.layout) {
        std::vector<double> y(rec.element_count());
        for (std::size_t s = 0; s < rec.symbol_count; ++s) {
            const auto sym = stream.symbols[pos + s];
            y[2 * s] = sym.real();
            if (2 * s + 1 < y.size()) y[2 * s + 1] = sym.imag();
        }
        pos += rec.symbol_count;
        groups.push_back(std::move(y));
    }
    return groups;
}

namespace {

// Sum of squares over non-filler components.
std::pair<double, std::size_t> component_energy(const SymbolStream& stream,
                                                const std::vector<std::complex<double>>& values) {
    double energy = 0.0;
    std::size_t count = 0;
    std::size_t pos = 0;
    for (const auto& rec : stream.layout) {
        for (std::size_t s = 0; s < rec.symbol_count; ++s) {
            const auto v = values[pos + s];
            energy += v.real() * v.real();
            ++count;
            if (!(rec.padded && s + 1 == rec.symbol_count)) {
                energy += v.imag() * v.imag();
                ++count;
            }
        }
        pos += rec.symbol_count;
    }
    return {energy, count};
}

}  // namespace

Transmission transmit(const SymbolStream& stream, const ChannelConfig& config) {
    if (stream.symbols.empty()) throw Error(ErrorCode::invalid_argument, "transmit: empty symbol stream");
    if (std::isnan(config.csnr_db)) throw Error(ErrorCode::invalid_argument, "transmit: CSNR is NaN");
    std::size_t described = 0;
    for (const auto& rec : stream.layout) described += rec.symbol_count;
    if (described != stream.symbols.size()) throw Error(ErrorCode::layout_mismatch, "transmit: layout mismatch");

    const auto [energy, count] = component_energy(stream, stream.symbols);
    Transmission tx;
    tx.signal_power = energy / static_cast<double>(count);
    tx.received = stream;

    if (config.csnr_db == noiseless_csnr_db) return tx;
    if (!(tx.signal_power > 0.0)) {
        throw Error(ErrorCode::zero_power_stream, "transmit: stream has zero power, CSNR undefined");
    }

    tx.noise_variance = tx.signal_power / std::pow(10.0, config.csnr_db / 10.0);
    const double sigma = std::sqrt(tx.noise_variance);
    GaussianSource noise(config.seed);
    for (auto& s : tx.received.symbols) {
        const double ni = sigma * noise.normal();
        const double nq = sigma * noise.normal();
        s += std::complex<double>(ni, nq);
    }

    std::vector<std::complex<double>> diff(stream.symbols.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = tx.received.symbols[i] - stream.symbols[i];
    const double noise_power = component_energy(stream, diff).first / static_cast<double>(count);
    tx.realized_csnr_db = 10.0 * std::log10(tx.signal_power / noise_power);
    return tx;
}

double estimate_noise_power(const SymbolStream& sent, const SymbolStream& received) {
    if (sent.symbols.size() != received.symbols.size()) {
        throw Error(ErrorCode::length_mismatch, "estimate_noise_power: stream lengths differ");
    }
    const std::size_t n = 2 * sent.symbols.size();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < sent.symbols.size(); ++i) {
        const auto d = received.symbols[i] - sent.symbols[i];
        sum += d.real() + d.imag();
    }
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < sent.symbols.size(); ++i) {
        const auto d = received.symbols[i] - sent.symbols[i];
        sq += (d.real() - mean) * (d.real() - mean) + (d.imag() - mean) * (d.imag() - mean);
    }
    return sq / static_cast<double>(n - 1);
}

namespace {

void put_f32(std::ostream& out, double v) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    const std::array<char, 4> bytes{static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                                    static_cast<char>((bits >> 16) & 0xff), static_cast<char>((bits >> 24) & 0xff)};
    out.write(bytes.data(), 4);
}

double get_f32(std::istream& in) {
    std::array<unsigned char, 4> b{};
    if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw Error(ErrorCode::truncated, "symbol file truncated");
    const std::uint32_t bits = std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) |
                               (std::uint32_t{b[3]} << 24);
    return static_cast<double>(std::bit_cast<float>(bits));
}

}  // namespace

void write_symbols(std::ostream& out, const SymbolStream& stream) {
    for (const auto& s : stream.symbols) {
        put_f32(out, s.real());
        put_f32(out, s.imag());
    }
    if (!out) throw Error(ErrorCode::io, "symbol write failed");
}

SymbolStream read_symbols(std::istream& in, std::vector<LayoutRecord> layout) {
    SymbolStream stream;
    std::size_t total = 0;
    for (const auto& rec : layout) total += rec.symbol_count;
    stream.layout = std::move(layout);
    stream.symbols.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        const double re = get_f32(in);
        const double im = get_f32(in);
        stream.symbols.emplace_back(re, im);
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw Error(ErrorCode::layout_mismatch, "symbol file longer than the layout describes");
    }
    return stream;
}

}  // namespace sparsecast
