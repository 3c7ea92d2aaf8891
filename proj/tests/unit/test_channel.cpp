#include "sparsecast/channel.hpp"
#include "sparsecast/error.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace sparsecast;

namespace {

SymbolStream unit_stream(std::size_t components, std::uint64_t seed) {
    std::vector<std::vector<double>> groups{testing::random_vector(components, seed)};
    return map_symbols(groups);
}

}  // namespace

TEST_SUITE("channel") {
    TEST_CASE("I/Q pairing and padding") {
        std::vector<std::vector<double>> even{{1, 2, 3, 4}};
        auto s = map_symbols(even);
        REQUIRE(s.symbols.size() == 2);
        CHECK(s.symbols[0] == std::complex<double>(1, 2));
        CHECK(s.symbols[1] == std::complex<double>(3, 4));
        CHECK_FALSE(s.layout[0].padded);

        std::vector<std::vector<double>> odd{{1, 2, 3}};
        s = map_symbols(odd);
        REQUIRE(s.symbols.size() == 2);
        CHECK(s.symbols[1] == std::complex<double>(3, 0));
        CHECK(s.layout[0].padded);
        CHECK(s.layout[0].symbol_count == 2);
        CHECK(s.layout[0].element_count() == 3);
    }

    TEST_CASE("unmap inverts map for mixed lengths") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::vector<std::vector<double>> groups;
            for (std::size_t len : {1u, 2u, 7u, 64u, 33u}) groups.push_back(testing::random_vector(len + seed, seed * 10 + len));
            const auto s = map_symbols(groups);
            CHECK(unmap_symbols(s) == groups);
        }
        SymbolStream bad = map_symbols(std::vector<std::vector<double>>{{1, 2, 3}});
        bad.symbols.pop_back();
        CHECK_THROWS_AS(unmap_symbols(bad), Error);
    }

    TEST_CASE("layout counts") {
        const std::vector<std::size_t> idx{0, 5};
        const std::vector<std::size_t> counts{64, 1023};
        const auto layout = make_layout(idx, counts);
        CHECK(layout[0] == LayoutRecord{0, 32, false});
        CHECK(layout[1] == LayoutRecord{5, 512, true});
    }

    TEST_CASE("noiseless sentinel is the identity") {
        const auto s = unit_stream(1001, 3);
        const auto tx = transmit(s, {noiseless_csnr_db, 9});
        CHECK(tx.received == s);
        CHECK(tx.noise_variance == 0.0);
    }

    TEST_CASE("noise variance follows the empirical power") {
        std::vector<std::vector<double>> ones{std::vector<double>(1000, 1.0)};
        const auto s = map_symbols(ones);
        auto tx = transmit(s, {0.0, 1});
        CHECK(tx.signal_power == doctest::Approx(1.0));
        CHECK(tx.noise_variance == doctest::Approx(1.0));

        std::vector<std::vector<double>> twos{std::vector<double>(1000, 2.0)};
        tx = transmit(map_symbols(twos), {10.0, 1});
        CHECK(tx.noise_variance == doctest::Approx(0.4));
    }

    TEST_CASE("padding components do not count toward power") {
        std::vector<std::vector<double>> g{{3.0}};
        const auto tx = transmit(map_symbols(g), {0.0, 2});
        CHECK(tx.signal_power == doctest::Approx(9.0));
        CHECK(tx.received.symbols[0].imag() != 0.0);
    }

    TEST_CASE("realized CSNR tracks the request over 1e5 components") {
        const auto s = unit_stream(100000, 5);
        for (double c : {-10.0, 0.0, 5.0, 25.0}) {
            const auto tx = transmit(s, {c, 11});
            CAPTURE(c);
            CHECK(std::abs(tx.realized_csnr_db - c) < 0.1);
        }
    }

    TEST_CASE("determinism and seed sensitivity") {
        const auto s = unit_stream(500, 8);
        CHECK(transmit(s, {5.0, 1}).received == transmit(s, {5.0, 1}).received);
        CHECK_FALSE(transmit(s, {5.0, 1}).received == transmit(s, {5.0, 2}).received);
    }

    TEST_CASE("error cases") {
        SymbolStream empty;
        CHECK_THROWS_AS(transmit(empty, {0.0, 1}), Error);
        const auto zero = map_symbols(std::vector<std::vector<double>>{std::vector<double>(4, 0.0)});
        try {
            transmit(zero, {5.0, 1});
            FAIL("expected zero-power error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::zero_power_stream);
        }
        CHECK(transmit(zero, {noiseless_csnr_db, 1}).received == zero);
        CHECK_THROWS_AS(transmit(unit_stream(4, 1), {std::nan(""), 1}), Error);
    }

    TEST_CASE("noise power estimate") {
        const auto s = unit_stream(100000, 21);
        CHECK(estimate_noise_power(s, s) == 0.0);
        const auto noise = testing::random_vector(2 * s.symbols.size(), 33);
        auto received = [&](double sigma) {
            SymbolStream r = s;
            for (std::size_t i = 0; i < r.symbols.size(); ++i) {
                r.symbols[i] += std::complex<double>(sigma * noise[2 * i], sigma * noise[2 * i + 1]);
            }
            return r;
        };
        const double one = estimate_noise_power(s, received(1.0));
        CHECK(one >= 0.95);
        CHECK(one <= 1.05);
        CHECK(estimate_noise_power(s, received(2.0)) == doctest::Approx(4.0 * one).epsilon(1e-9));
        CHECK_THROWS_AS(estimate_noise_power(s, unit_stream(10, 1)), Error);
    }

    TEST_CASE("symbol file round trip") {
        std::vector<std::vector<double>> g{{0.5, -1.25, 3.0}, {2.0, 4.0}};
        const auto s = map_symbols(g);
        std::stringstream buf;
        write_symbols(buf, s);
        CHECK(buf.str().size() == 3 * 8);
        const auto back = read_symbols(buf, s.layout);
        CHECK(back == s);

        std::stringstream shortbuf(buf.str().substr(0, 20));
        CHECK_THROWS_AS(read_symbols(shortbuf, s.layout), Error);
        std::stringstream longbuf(buf.str() + "xxxxxxxx");
        CHECK_THROWS_AS(read_symbols(longbuf, s.layout), Error);
    }
}
