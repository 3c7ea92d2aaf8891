#include "sparsecast/image.hpp"

#include "sparsecast/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace sparsecast {
namespace {

void skip_space_and_comments(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

std::size_t read_header_number(std::istream& in, const char* field) {
    skip_space_and_comments(in);
    if (!std::isdigit(in.peek())) {
        throw Error(ErrorCode::malformed_header, std::string("PGM header: bad ") + field);
    }
    std::size_t value = 0;
    while (std::isdigit(in.peek())) {
        value = value * 10 + static_cast<std::size_t>(in.get() - '0');
        if (value > 1u << 24) {
            throw Error(ErrorCode::malformed_header, std::string("PGM header: ") + field + " too large");
        }
    }
    return value;
}

void check_divisible(std::size_t width, std::size_t height, std::size_t block_side) {
    if (block_side == 0) throw Error(ErrorCode::invalid_argument, "block side must be positive");
    if (width % block_side != 0 || height % block_side != 0) {
        throw Error(ErrorCode::dimension_not_divisible,
                    "frame " + std::to_string(width) + "x" + std::to_string(height) +
                        " not divisible by block side " + std::to_string(block_side));
    }
}

}  // namespace

Frame read_pgm(std::istream& in, std::size_t block_side) {
    char magic[2] = {};
    if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') {
        throw Error(ErrorCode::malformed_header, "not a binary PGM (P5)");
    }
    const std::size_t width = read_header_number(in, "width");
    const std::size_t height = read_header_number(in, "height");
    const std::size_t maxval = read_header_number(in, "maxval");
    if (width == 0 || height == 0) throw Error(ErrorCode::malformed_header, "PGM header: zero dimension");
    if (maxval != 255) {
        throw Error(ErrorCode::unsupported_maxval, "PGM maxval " + std::to_string(maxval) + " unsupported");
    }
    if (!std::isspace(in.get())) throw Error(ErrorCode::malformed_header, "PGM header: missing separator");
    check_divisible(width, height, block_side);

    std::vector<unsigned char> bytes(width * height);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
        throw Error(ErrorCode::truncated, "PGM pixel data truncated");
    }
    Frame frame(width, height);
    std::transform(bytes.begin(), bytes.end(), frame.pixels.begin(),
                   [](unsigned char b) { return static_cast<double>(b); });
    return frame;
}

Frame load_frame(const std::filesystem::path& path, std::size_t block_side) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    return read_pgm(in, block_side);
}

void write_pgm(std::ostream& out, const Frame& frame) {
    const Frame q = quantized(frame);
    out << "P5\n" << q.width << ' ' << q.height << "\n255\n";
    std::vector<unsigned char> bytes(q.pixels.size());
    std::transform(q.pixels.begin(), q.pixels.end(), bytes.begin(),
                   [](double v) { return static_cast<unsigned char>(v); });
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::io, "PGM write failed");
}

void save_frame(const Frame& frame, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot create " + path.string());
    write_pgm(out, frame);
}

BlockGrid partition(const Frame& frame, std::size_t block_side) {
    check_divisible(frame.width, frame.height, block_side);
    const std::size_t across = frame.width / block_side;
    const std::size_t down = frame.height / block_side;
    BlockGrid grid;
    grid.block_side = block_side;
    grid.blocks.reserve(across * down);
    for (std::size_t by = 0; by < down; ++by) {
        for (std::size_t bx = 0; bx < across; ++bx) {
            Matrix block(block_side, block_side);
            for (std::size_t r = 0; r < block_side; ++r) {
                const double* src = &frame.pixels[(by * block_side + r) * frame.width + bx * block_side];
                std::copy_n(src, block_side, block.row(r).begin());
            }
            grid.blocks.push_back(std::move(block));
        }
    }
    return grid;
}

Frame reassemble(const BlockGrid& grid, std::size_t width, std::size_t height, Clamp clamp) {
    const std::size_t side = grid.block_side;
    check_divisible(width, height, side);
    const std::size_t across = width / side;
    if (grid.blocks.size() != across * (height / side)) {
        throw Error(ErrorCode::dimension_mismatch, "block count does not match frame dimensions");
    }
    Frame frame(width, height);
    for (std::size_t n = 0; n < grid.blocks.size(); ++n) {
        const Matrix& block = grid.blocks[n];
        if (block.rows() != side || block.cols() != side) {
            throw Error(ErrorCode::dimension_mismatch, "block has wrong shape");
        }
        const std::size_t bx = n % across;
        const std::size_t by = n / across;
        for (std::size_t r = 0; r < side; ++r) {
            std::copy_n(block.row(r).begin(), side,
                        &frame.pixels[(by * side + r) * width + bx * side]);
        }
    }
    return clamp == Clamp::yes ? clamped(std::move(frame)) : frame;
}

Frame clamped(Frame frame) {
    for (double& p : frame.pixels) p = std::clamp(p, 0.0, 255.0);
    return frame;
}

Frame quantized(Frame frame) {
    for (double& p : frame.pixels) p = std::round(std::clamp(p, 0.0, 255.0));
    return frame;
}

double mean_squared_error(const Frame& reference, const Frame& test) {
    if (reference.width != test.width || reference.height != test.height) {
        throw Error(ErrorCode::dimension_mismatch, "psnr: frame dimensions differ");
    }
    if (reference.pixels.empty()) throw Error(ErrorCode::dimension_mismatch, "psnr: empty frame");
    double sum = 0.0;
    for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
        const double d = reference.pixels[i] - test.pixels[i];
        sum += d * d;
    }
    return sum / static_cast<double>(reference.pixels.size());
}

double psnr(const Frame& reference, const Frame& test) {
    const double mse = mean_squared_error(reference, test);
    if (mse == 0.0) return psnr_infinite;
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace sparsecast
