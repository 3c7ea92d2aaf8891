#pragma once

#include "sparsecast/matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

namespace sparsecast {

/// Grayscale luminance frame. Pixels are real-valued while in the pipeline and
/// only become 8-bit when written out.
struct Frame {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;  // row-major, height x width

    Frame() = default;
    Frame(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), pixels(w * h, fill) {}

    double& at(std::size_t x, std::size_t y) noexcept { return pixels[y * width + x]; }
    double at(std::size_t x, std::size_t y) const noexcept { return pixels[y * width + x]; }

    friend bool operator==(const Frame&, const Frame&) = default;
};

/// N square blocks in row-major scan order over the frame.
struct BlockGrid {
    std::size_t block_side = 0;
    std::vector<Matrix> blocks;
};

enum class Clamp { no, yes };

inline constexpr double psnr_infinite = std::numeric_limits<double>::infinity();

/// Binary PGM (P5, maxval 255). Dimensions must divide by block_side; pass 1
/// to skip that check.
Frame load_frame(const std::filesystem::path& path, std::size_t block_side);
Frame read_pgm(std::istream& in, std::size_t block_side = 1);

/// Writes the clamped, rounded 8-bit version of the frame.
void save_frame(const Frame& frame, const std::filesystem::path& path);
void write_pgm(std::ostream& out, const Frame& frame);

BlockGrid partition(const Frame& frame, std::size_t block_side);
Frame reassemble(const BlockGrid& grid, std::size_t width, std::size_t height,
                 Clamp clamp = Clamp::no);

/// Clamp to [0, 255].
Frame clamped(Frame frame);
/// Clamp to [0, 255] and round to the nearest integer, as written to disk.
Frame quantized(Frame frame);

/// 10 log10(255^2 / MSE); psnr_infinite when the frames are identical.
double psnr(const Frame& reference, const Frame& test);
double mean_squared_error(const Frame& reference, const Frame& test);

}  // namespace sparsecast
