#include "sparsecast/bitstream.hpp"
#include "sparsecast/error.hpp"
#include "sparsecast/metadata.hpp"
#include "sparsecast/rng.hpp"

#include <doctest.h>

#include <bit>

using namespace sparsecast;

namespace {

Metadata random_metadata(std::uint64_t seed, std::size_t side, std::size_t w, std::size_t h,
                         std::vector<std::uint32_t> levels) {
    GaussianSource rng(seed);
    Metadata m;
    m.block_side = static_cast<std::uint8_t>(side);
    m.width = static_cast<std::uint16_t>(w);
    m.height = static_cast<std::uint16_t>(h);
    m.session_seed = derive_seed(seed, {1});
    m.level_table = std::move(levels);
    m.groups.resize(side * side);
    for (auto& g : m.groups) {
        g.mean = static_cast<float>(100.0 * rng.normal());
        g.variance = static_cast<float>(std::exp(5.0 * rng.normal()));
        g.level_index = static_cast<std::uint32_t>(rng.uniform() * static_cast<double>(m.level_table.size()));
    }
    return m;
}

}  // namespace

TEST_SUITE("metadata") {
    TEST_CASE("bit writer packs MSB first") {
        BitWriter w;
        w.put_bits(0b101, 3);
        w.put_bits(0b11111, 5);
        w.put_bits(1, 1);
        CHECK(w.bit_count() == 9);
        const auto bytes = std::move(w).finish();
        REQUIRE(bytes.size() == 2);
        CHECK(bytes[0] == 0b10111111);
        CHECK(bytes[1] == 0b10000000);

        BitReader r(bytes);
        CHECK(r.get_bits(3) == 0b101);
        CHECK(r.get_bits(5) == 0b11111);
        CHECK(r.get_bits(1) == 1);
        CHECK(r.get_bits(7) == 0);
        CHECK_THROWS_AS(r.get_bits(1), Error);
    }

    TEST_CASE("little-endian fields and float bits") {
        BitWriter w;
        w.put_le(0x0102, 2);
        w.put_f32(-1.5f);
        const auto bytes = std::move(w).finish();
        REQUIRE(bytes.size() == 6);
        CHECK(bytes[0] == 0x02);
        CHECK(bytes[1] == 0x01);
        BitReader r(bytes);
        CHECK(r.get_le(2) == 0x0102);
        CHECK(std::bit_cast<std::uint32_t>(r.get_f32()) == std::bit_cast<std::uint32_t>(-1.5f));
    }

    TEST_CASE("b=256, S=8 costs 17,152 record bits plus the fixed header") {
        const Metadata m = random_metadata(1, 16, 512, 512, {64, 128, 192, 256, 384, 512, 768, 1024});
        CHECK(m.index_bits() == 3);
        CHECK(m.group_payload_bits() == 17152);
        CHECK(m.fixed_header_bits() == 384);
        const auto bytes = serialize_metadata(m);
        CHECK(bytes.size() * 8 == 384 + 17152);
    }

    TEST_CASE("S=1 uses no index bits") {
        const Metadata m = random_metadata(2, 4, 8, 8, {4});
        CHECK(m.index_bits() == 0);
        CHECK(m.group_payload_bits() == 16 * 64);
        CHECK(deserialize_metadata(serialize_metadata(m)) == m);
    }

    TEST_CASE("round trip on random metadata") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const Metadata m = random_metadata(seed, 8, 64, 128, {8, 16, 32, 64, 100, 128});
            CHECK(deserialize_metadata(serialize_metadata(m)) == m);
        }
    }

    TEST_CASE("corrupted input is rejected with distinct codes") {
        const Metadata m = random_metadata(3, 8, 64, 64, {8, 16, 32, 64});
        auto bytes = serialize_metadata(m);

        auto code = [](std::vector<std::uint8_t> b) {
            try {
                deserialize_metadata(b);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::io;
        };
        auto v = bytes;
        v[0] = 2;
        CHECK(code(v) == ErrorCode::version_mismatch);
        v = bytes;
        v.pop_back();
        CHECK(code(v) == ErrorCode::truncated);
        v = bytes;
        v.push_back(0);
        CHECK(code(v) == ErrorCode::length_mismatch);
        v = bytes;
        v[2] = 65;  // width 65 not divisible by 8
        CHECK(code(v) == ErrorCode::dimension_not_divisible);

        Metadata bad = m;
        bad.level_table = {8, 16, 32, 63};
        CHECK_THROWS_AS(serialize_metadata(bad), Error);
        bad = m;
        bad.groups.pop_back();
        CHECK_THROWS_AS(serialize_metadata(bad), Error);
    }
}
