#include "sparsecast/harness.hpp"

#include "sparsecast/channel.hpp"
#include "sparsecast/error.hpp"
#include "sparsecast/parallel.hpp"
#include "sparsecast/rng.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

namespace sparsecast {

std::string_view codec_name(CodecKind kind) noexcept {
    return kind == CodecKind::sparsecast ? "sparsecast" : "softcast";
}

CodecKind parse_codec(std::string_view name) {
    if (name == "sparsecast") return CodecKind::sparsecast;
    if (name == "softcast") return CodecKind::softcast;
    throw Error(ErrorCode::invalid_argument, "unknown codec '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
    if (csnr_points.empty()) throw Error(ErrorCode::invalid_argument, "sweep: no CSNR points");
    if (trials == 0) throw Error(ErrorCode::invalid_argument, "sweep: trials must be at least 1");
    for (double c : csnr_points) {
        if (std::isnan(c) || c == -std::numeric_limits<double>::infinity()) {
            throw Error(ErrorCode::invalid_argument, "sweep: invalid CSNR point");
        }
    }
    amp.validate();
}

double matched_softcast_threshold(const Frame& image, const SparseCastParams& sparse, std::size_t softcast_block_side) {
    const std::size_t budget = encode(image, sparse).stream.total_symbols();
    return softcast_threshold_for_budget(image, softcast_block_side, budget);
}

namespace {

struct Trial {
    double psnr = 0.0;
    double realized = 0.0;
    double seconds = 0.0;
};

// Encoded once per sweep; decode is const and shared across trial jobs.
struct PreparedCodec {
    SymbolStream stream;
    std::size_t metadata_bits = 0;
    std::unique_ptr<SparseCastDecoder> sparse;
    SoftCastMetadata soft;

    Frame decode(const SymbolStream& received, double noise_variance) const {
        if (sparse) return sparse->decode(received, noise_variance);
        return softcast_decode(received, soft, noise_variance);
    }
};

PreparedCodec prepare(const SweepSpec& spec, const Frame& image) {
    PreparedCodec p;
    if (spec.codec == CodecKind::sparsecast) {
        EncodedImage enc = encode(image, spec.sparsecast);
        // Decoder only ever sees the serialized form.
        const auto bytes = serialize_metadata(enc.metadata);
        p.sparse = std::make_unique<SparseCastDecoder>(deserialize_metadata(bytes), spec.amp);
        p.metadata_bits = enc.metadata.total_bits();
        p.stream = std::move(enc.stream);
    } else {
        SoftCastEncoded enc = softcast_encode(image, spec.softcast);
        p.soft = deserialize_softcast_metadata(serialize_softcast_metadata(enc.metadata));
        p.metadata_bits = enc.metadata.total_bits();
        p.stream = std::move(enc.stream);
    }
    return p;
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_of(std::span<const double> v, double mean) {
    if (v.size() < 2 || std::isinf(mean)) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const Frame& image) {
    spec.validate();
    const PreparedCodec codec = prepare(spec, image);
    const std::size_t points = spec.csnr_points.size();
    std::vector<Trial> trials(points * spec.trials);

    parallel_for(
        trials.size(),
        [&](std::size_t job) {
            const std::size_t p = job / spec.trials;
            const std::size_t t = job % spec.trials;
            const auto start = std::chrono::steady_clock::now();
            const ChannelConfig channel{spec.csnr_points[p], derive_seed(spec.seed_base, {p, t})};
            const Transmission tx = transmit(codec.stream, channel);
            const Frame decoded = codec.decode(tx.received, tx.noise_variance);
            trials[job].psnr = psnr(image, decoded);
            trials[job].realized = tx.realized_csnr_db;
            if (spec.timing) {
                trials[job].seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
        },
        spec.threads);

    std::vector<SweepRecord> records;
    records.reserve(points);
    for (std::size_t p = 0; p < points; ++p) {
        std::vector<double> ps, rs, ts;
        for (std::size_t t = 0; t < spec.trials; ++t) {
            const Trial& tr = trials[p * spec.trials + t];
            ps.push_back(tr.psnr);
            rs.push_back(tr.realized);
            ts.push_back(tr.seconds);
        }
        SweepRecord r;
        r.codec = std::string(codec_name(spec.codec));
        r.csnr_req_db = spec.csnr_points[p];
        r.csnr_real_db = mean_of(rs);
        r.psnr_mean_db = mean_of(ps);
        r.psnr_std_db = std_of(ps, r.psnr_mean_db);
        r.symbols = codec.stream.total_symbols();
        r.metadata_bits = codec.metadata_bits;
        r.seconds = mean_of(ts);
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

std::string fixed4(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.4f", v);
    std::string s(buf.data());
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::malformed_header, "csv: bad number '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) throw Error(ErrorCode::malformed_header, "csv: bad count '" + s + "'");
    return static_cast<std::size_t>(v);
}

void write_row(std::ostream& out, const SweepRecord& r) {
    out << r.codec << ',' << fixed4(r.csnr_req_db) << ',' << fixed4(r.csnr_real_db) << ','
        << fixed4(r.psnr_mean_db) << ',' << fixed4(r.psnr_std_db) << ',' << r.symbols << ',' << r.metadata_bits
        << ',' << fixed4(r.seconds);
}

}  // namespace

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
    out << csv_header << '\n';
    for (const auto& r : records) {
        write_row(out, r);
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::io, "csv write failed");
}

void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
    write_csv(out, records);
}

std::vector<SweepRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header) throw Error(ErrorCode::malformed_header, "csv: bad header");
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 8) throw Error(ErrorCode::malformed_header, "csv: expected 8 fields");
        SweepRecord r;
        r.codec = f[0];
        r.csnr_req_db = parse_double(f[1]);
        r.csnr_real_db = parse_double(f[2]);
        r.psnr_mean_db = parse_double(f[3]);
        r.psnr_std_db = parse_double(f[4]);
        r.symbols = parse_count(f[5]);
        r.metadata_bits = parse_count(f[6]);
        r.seconds = parse_double(f[7]);
        records.push_back(std::move(r));
    }
    return records;
}

void save_reconstruction(const Frame& frame, const std::filesystem::path& path) { save_frame(frame, path); }

namespace {

constexpr std::array<ReferenceThreshold, 4> table_i{{
    {"BPSK", "1/2 or 3/4", 1, 8.0, 3.0, std::nullopt, 5.0},
    {"QPSK", "1/2 or 3/4", 2, 11.0, 6.0, std::nullopt, 8.0},
    {"16-QAM", "1/2 or 3/4", 4, 18.0, 11.0, std::nullopt, 15.0},
    {"64-QAM", "2/3 or 3/4", 6, 24.0, std::nullopt, 19.0, 21.0},
}};

}  // namespace

std::span<const ReferenceThreshold> reference_thresholds() noexcept { return table_i; }

std::optional<DigitalMode> best_digital_mode(double csnr_db) {
    std::optional<DigitalMode> best;
    auto consider = [&](const ReferenceThreshold& row, std::optional<double> threshold, unsigned num, unsigned den,
                        std::string_view rate_label) {
        if (!threshold || *threshold > csnr_db) return;
        const double bits = static_cast<double>(row.bits_per_symbol * num) / den;
        // Ties in throughput go to the mode with more margin.
        if (!best || bits > best->info_bits_per_symbol ||
            (bits == best->info_bits_per_symbol && *threshold < best->threshold_db)) {
            best = DigitalMode{std::string(row.constellation) + " " + std::string(rate_label), *threshold, bits};
        }
    };
    for (const auto& row : table_i) {
        consider(row, row.uncoded_db, 1, 1, "uncoded");
        consider(row, row.coded_1_2_db, 1, 2, "1/2");
        consider(row, row.coded_2_3_db, 2, 3, "2/3");
        consider(row, row.coded_3_4_db, 3, 4, "3/4");
    }
    return best;
}

void write_report(std::ostream& out, std::span<const SweepRecord> records) {
    out << csv_header << ",best_digital,digital_threshold_db,digital_bits_per_symbol\n";
    for (const auto& r : records) {
        write_row(out, r);
        if (const auto mode = best_digital_mode(r.csnr_req_db)) {
            out << ',' << mode->label << ',' << fixed4(mode->threshold_db) << ','
                << fixed4(mode->info_bits_per_symbol) << '\n';
        } else {
            out << ",,,\n";
        }
    }
    if (!out) throw Error(ErrorCode::io, "report write failed");
}

}  // namespace sparsecast
