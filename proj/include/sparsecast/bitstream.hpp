#pragma once
// MSB-first bit packing plus little-endian byte fields.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sparsecast {

class BitWriter {
public:
    void put_bits(std::uint64_t value, std::size_t count);
    void put_f32(float value);
    void put_le(std::uint64_t value, std::size_t bytes);  // byte-aligned only

    std::size_t bit_count() const noexcept { return bits_; }
    std::vector<std::uint8_t> finish() &&;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t get_bits(std::size_t count);
    float get_f32();
    std::uint64_t get_le(std::size_t bytes);

    std::size_t bit_position() const noexcept { return pos_; }
    std::size_t bits_remaining() const noexcept { return bytes_.size() * 8 - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace sparsecast
