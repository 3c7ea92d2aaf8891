// sparsecast: command-line front end for the codec and the simulation harness.
//
//   sparsecast encode   --image in.pgm --meta out.meta --symbols out.iq
//   sparsecast decode   --meta in.meta --symbols in.iq --noise-var 0 --out out.pgm
//   sparsecast simulate --image in.pgm --csnr 10 [--out out.pgm]
//   sparsecast sweep    --image in.pgm --csnr-list 5,10,15 --trials 5 [--out sweep.csv]
//   sparsecast report   --in sweep.csv [--out report.csv]
//
// Every flag may also come from --config FILE (flat key = value lines); flags
// on the command line win.

#include "sparsecast/codec.hpp"
#include "sparsecast/error.hpp"
#include "sparsecast/harness.hpp"
#include "sparsecast/softcast.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sc = sparsecast;

namespace {

struct Options {
    std::string image;
    std::size_t block_side = 16;
    double tau = 0.1;
    double oversampling = 3.0;
    std::vector<std::uint32_t> levels;
    std::string csnr = "inf";
    std::vector<std::string> csnr_list;
    std::size_t trials = 5;
    std::uint64_t seed = 1;
    std::string codec = "sparsecast";
    std::string out;
    std::string in;
    std::string meta;
    std::string symbols;
    double noise_var = 0.0;
    std::optional<double> threshold;
    std::optional<std::size_t> budget;
    std::size_t softcast_block_side = 32;
    unsigned threads = 0;
    bool timing = false;
};

double parse_db(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || std::isnan(v)) {
        throw sc::Error(sc::ErrorCode::invalid_argument, "not a CSNR value: '" + text + "'");
    }
    return v;
}

sc::SparseCastParams sparse_params(const Options& o) {
    sc::SparseCastParams p;
    p.block_side = o.block_side;
    p.tau = o.tau;
    p.oversampling = o.oversampling;
    p.levels = o.levels;
    p.session_seed = o.seed;
    return p;
}

sc::SoftCastParams soft_params(const Options& o, const sc::Frame& image) {
    sc::SoftCastParams p;
    p.block_side = o.softcast_block_side;
    if (o.threshold) {
        p.threshold = *o.threshold;
    } else if (o.budget) {
        p.threshold = sc::softcast_threshold_for_budget(image, p.block_side, *o.budget);
    } else {
        p.threshold = sc::matched_softcast_threshold(image, sparse_params(o), p.block_side);
    }
    return p;
}

std::size_t load_side(const Options& o, sc::CodecKind codec) {
    return codec == sc::CodecKind::sparsecast ? o.block_side : o.softcast_block_side;
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sc::Error(sc::ErrorCode::io, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw sc::Error(sc::ErrorCode::io, "cannot write " + path);
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw sc::Error(sc::ErrorCode::invalid_argument, std::string(flag) + " is required");
}

int run_encode(const Options& o) {
    require(o.image, "--image");
    require(o.meta, "--meta");
    require(o.symbols, "--symbols");
    const auto codec = sc::parse_codec(o.codec);
    const sc::Frame image = sc::load_frame(o.image, load_side(o, codec));
    sc::SymbolStream stream;
    std::size_t bits = 0;
    if (codec == sc::CodecKind::sparsecast) {
        const auto enc = sc::encode(image, sparse_params(o));
        write_bytes(o.meta, sc::serialize_metadata(enc.metadata));
        bits = enc.metadata.total_bits();
        stream = enc.stream;
    } else {
        const auto enc = sc::softcast_encode(image, soft_params(o, image));
        write_bytes(o.meta, sc::serialize_softcast_metadata(enc.metadata));
        bits = enc.metadata.total_bits();
        stream = enc.stream;
    }
    std::ofstream sym(o.symbols, std::ios::binary);
    if (!sym) throw sc::Error(sc::ErrorCode::io, "cannot write " + o.symbols);
    sc::write_symbols(sym, stream);
    std::cout << "codec=" << o.codec << " symbols=" << stream.total_symbols() << " metadata_bits=" << bits << '\n';
    return 0;
}

int run_decode(const Options& o) {
    require(o.meta, "--meta");
    require(o.symbols, "--symbols");
    require(o.out, "--out");
    const auto codec = sc::parse_codec(o.codec);
    const auto bytes = read_bytes(o.meta);
    std::ifstream sym(o.symbols, std::ios::binary);
    if (!sym) throw sc::Error(sc::ErrorCode::io, "cannot open " + o.symbols);
    sc::Frame frame;
    if (codec == sc::CodecKind::sparsecast) {
        const sc::SparseCastDecoder decoder(sc::deserialize_metadata(bytes));
        frame = decoder.decode(sc::read_symbols(sym, decoder.layout()), o.noise_var);
    } else {
        const auto meta = sc::deserialize_softcast_metadata(bytes);
        frame = sc::softcast_decode(sc::read_symbols(sym, sc::softcast_layout(meta)), meta, o.noise_var);
    }
    sc::save_reconstruction(frame, o.out);
    return 0;
}

int run_simulate(const Options& o) {
    require(o.image, "--image");
    const auto codec = sc::parse_codec(o.codec);
    const sc::Frame image = sc::load_frame(o.image, load_side(o, codec));
    const sc::ChannelConfig channel{parse_db(o.csnr), o.seed};
    sc::Frame decoded;
    sc::Transmission tx;
    std::size_t bits = 0;
    if (codec == sc::CodecKind::sparsecast) {
        const auto enc = sc::encode(image, sparse_params(o));
        tx = sc::transmit(enc.stream, channel);
        decoded = sc::SparseCastDecoder(enc.metadata).decode(tx.received, tx.noise_variance);
        bits = enc.metadata.total_bits();
    } else {
        const auto enc = sc::softcast_encode(image, soft_params(o, image));
        tx = sc::transmit(enc.stream, channel);
        decoded = sc::softcast_decode(tx.received, enc.metadata, tx.noise_variance);
        bits = enc.metadata.total_bits();
    }
    if (!o.out.empty()) sc::save_reconstruction(decoded, o.out);
    std::printf("codec=%s csnr_req_db=%.4f csnr_real_db=%.4f psnr_db=%.4f symbols=%zu metadata_bits=%zu\n",
                o.codec.c_str(), channel.csnr_db, tx.realized_csnr_db, sc::psnr(image, decoded),
                tx.received.total_symbols(), bits);
    return 0;
}

int run_sweep(const Options& o) {
    require(o.image, "--image");
    sc::SweepSpec spec;
    spec.codec = sc::parse_codec(o.codec);
    const sc::Frame image = sc::load_frame(o.image, load_side(o, spec.codec));
    for (const auto& c : o.csnr_list) spec.csnr_points.push_back(parse_db(c));
    spec.trials = o.trials;
    spec.sparsecast = sparse_params(o);
    if (spec.codec == sc::CodecKind::softcast) spec.softcast = soft_params(o, image);
    spec.seed_base = o.seed;
    spec.timing = o.timing;
    spec.threads = o.threads;
    const auto records = sc::run_sweep(spec, image);
    if (o.out.empty()) {
        sc::write_csv(std::cout, records);
    } else {
        sc::emit_csv(records, o.out);
    }
    return 0;
}

int run_report(const Options& o) {
    require(o.in, "--in");
    std::ifstream in(o.in);
    if (!in) throw sc::Error(sc::ErrorCode::io, "cannot open " + o.in);
    const auto records = sc::read_csv(in);
    if (o.out.empty()) {
        sc::write_report(std::cout, records);
    } else {
        std::ofstream out(o.out);
        if (!out) throw sc::Error(sc::ErrorCode::io, "cannot write " + o.out);
        sc::write_report(out, records);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"SparseCast image codec and channel simulator"};
    app.set_config("--config", "", "flat key = value file mirroring the flags");
    app.require_subcommand(1);

    app.add_option("--image", o.image, "source PGM (P5, maxval 255)");
    app.add_option("--block-side", o.block_side, "SparseCast DCT block side")->capture_default_str();
    app.add_option("--tau", o.tau, "sparsity threshold")->capture_default_str();
    app.add_option("--oversampling", o.oversampling, "measurements per nonzero")->capture_default_str();
    app.add_option("--levels", o.levels, "measurement levels, ending at the block count")->delimiter(',');
    app.add_option("--csnr", o.csnr, "channel SNR in dB ('inf' for noiseless)")->capture_default_str();
    app.add_option("--csnr-list", o.csnr_list, "comma-separated CSNR points in dB")->delimiter(',');
    app.add_option("--trials", o.trials, "noise realizations per CSNR point")->capture_default_str();
    app.add_option("--seed", o.seed, "session and channel seed")->capture_default_str();
    app.add_option("--codec", o.codec, "sparsecast or softcast")->capture_default_str();
    app.add_option("--out", o.out, "output path (PGM or CSV)");
    app.add_option("--in", o.in, "input CSV for report");
    app.add_option("--meta", o.meta, "metadata file");
    app.add_option("--symbols", o.symbols, "symbol file, little-endian float32 I/Q");
    app.add_option("--noise-var", o.noise_var, "per-component noise variance for decode")->capture_default_str();
    app.add_option("--threshold", o.threshold, "SoftCast group energy threshold");
    app.add_option("--budget", o.budget, "SoftCast symbol budget (threshold chosen to fit)");
    app.add_option("--softcast-block-side", o.softcast_block_side, "SoftCast block side")->capture_default_str();
    app.add_option("--threads", o.threads, "sweep worker threads, 0 for all cores")->capture_default_str();
    app.add_flag("--timing", o.timing, "fill the seconds column (breaks byte-identical output)");

    int (*verb)(const Options&) = nullptr;
    const auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        app.add_subcommand(name, help)->fallthrough()->callback([&verb, fn] { verb = fn; });
    };
    add("encode", "encode an image to metadata + symbol files", run_encode);
    add("decode", "decode metadata + symbol files to a PGM", run_decode);
    add("simulate", "encode, send over AWGN once, decode", run_simulate);
    add("sweep", "PSNR over a list of CSNR points, as CSV", run_sweep);
    add("report", "sweep CSV with 802.11a threshold overlay", run_report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "sparsecast: " << e.what() << '\n';
        return 2;
    }

    try {
        return verb(o);
    } catch (const std::exception& e) {
        std::cerr << "sparsecast: error: " << e.what() << '\n';
        return 1;
    }
}
