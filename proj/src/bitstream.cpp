#include "sparsecast/bitstream.hpp"

#include "sparsecast/error.hpp"

#include <bit>

namespace sparsecast {

void BitWriter::put_bits(std::uint64_t value, std::size_t count) {
    for (std::size_t i = count; i-- > 0;) {
        if (bits_ % 8 == 0) bytes_.push_back(0);
        if ((value >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
        ++bits_;
    }
}

void BitWriter::put_f32(float value) { put_bits(std::bit_cast<std::uint32_t>(value), 32); }

void BitWriter::put_le(std::uint64_t value, std::size_t bytes) {
    if (bits_ % 8 != 0) throw Error(ErrorCode::invalid_argument, "byte field written off a byte boundary");
    for (std::size_t i = 0; i < bytes; ++i) put_bits((value >> (8 * i)) & 0xffu, 8);
}

std::vector<std::uint8_t> BitWriter::finish() && { return std::move(bytes_); }

std::uint64_t BitReader::get_bits(std::size_t count) {
    if (count > bits_remaining()) throw Error(ErrorCode::truncated, "bitstream truncated");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < count; ++i, ++pos_) {
        const unsigned bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
        value = (value << 1) | bit;
    }
    return value;
}

float BitReader::get_f32() { return std::bit_cast<float>(static_cast<std::uint32_t>(get_bits(32))); }

std::uint64_t BitReader::get_le(std::size_t bytes) {
    if (pos_ % 8 != 0) throw Error(ErrorCode::invalid_argument, "byte field read off a byte boundary");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < bytes; ++i) value |= get_bits(8) << (8 * i);
    return value;
}

}  // namespace sparsecast
