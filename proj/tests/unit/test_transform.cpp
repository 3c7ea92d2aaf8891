#include "sparsecast/error.hpp"
#include "sparsecast/transform.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sparsecast;

namespace {

Matrix random_block(std::size_t side, std::uint64_t seed) {
    Matrix m(side, side);
    const auto v = testing::random_vector(side * side, seed, 50.0);
    std::copy(v.begin(), v.end(), m.values().begin());
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
    return d;
}

// Textbook quadruple sum, independent of the separable implementation.
double naive_coefficient(const Matrix& x, std::size_t u, std::size_t v) {
    const std::size_t n = x.rows();
    auto a = [n](std::size_t k) { return k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n); };
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            s += x(r, c) * std::cos(std::numbers::pi * (2 * r + 1) * u / (2.0 * n)) *
                 std::cos(std::numbers::pi * (2 * c + 1) * v / (2.0 * n));
    return a(u) * a(v) * s;
}

}  // namespace

TEST_SUITE("transform") {
    TEST_CASE("constant block has only a DC coefficient") {
        const Matrix c = dct2(Matrix(16, 16, 3.0));
        CHECK(c(0, 0) == doctest::Approx(48.0).epsilon(1e-12));
        for (std::size_t i = 1; i < 256; ++i) CHECK(std::abs(c.values()[i]) < 1e-9);
        CHECK(dct2(Matrix(16, 16, 0.0)) == Matrix(16, 16, 0.0));
    }

    TEST_CASE("DC-only input inverts to a constant block") {
        Matrix c(16, 16, 0.0);
        c(0, 0) = 16.0 * 5.0;
        const Matrix x = idct2(c);
        for (double v : x.values()) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
    }

    TEST_CASE("matches the naive DCT definition") {
        const Matrix x = random_block(8, 9);
        const Matrix c = dct2(x);
        for (std::size_t u = 0; u < 8; ++u)
            for (std::size_t v = 0; v < 8; ++v) CHECK(c(u, v) == doctest::Approx(naive_coefficient(x, u, v)).epsilon(1e-10));
    }

    TEST_CASE("round trip, energy and linearity on random blocks") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Matrix x = random_block(16, seed);
            const Matrix c = dct2(x);
            CHECK(max_abs_diff(idct2(c), x) < 1e-9 * 50.0);
            double ex = 0.0, ec = 0.0;
            for (double v : x.values()) ex += v * v;
            for (double v : c.values()) ec += v * v;
            CHECK(ec == doctest::Approx(ex).epsilon(1e-9));

            const Matrix y = random_block(16, seed + 1000);
            Matrix combo(16, 16);
            for (std::size_t i = 0; i < 256; ++i) combo.values()[i] = 2.5 * c.values()[i] - 0.75 * dct2(y).values()[i];
            const Matrix lhs = idct2(combo);
            Matrix rhs(16, 16);
            for (std::size_t i = 0; i < 256; ++i) rhs.values()[i] = 2.5 * x.values()[i] - 0.75 * y.values()[i];
            CHECK(max_abs_diff(lhs, rhs) < 1e-9 * 200.0);
        }
    }

    TEST_CASE("grouping convention") {
        CoefficientCube cube{2, 4, std::vector<double>(16, 0.0)};
        for (std::size_t n = 0; n < 4; ++n) cube.at(0, 1, n) = static_cast<double>(n);
        const auto groups = group(cube);
        REQUIRE(groups.size() == 4);
        CHECK(groups[1].frequency_index == 1);
        CHECK(groups[1].values == std::vector<double>{0, 1, 2, 3});
        CHECK(groups[1].sparsity == 3);
        CHECK(groups[1].mean == doctest::Approx(1.5));
        CHECK(groups[1].variance == doctest::Approx(1.25));
    }

    TEST_CASE("ungroup inverts group") {
        CoefficientCube cube{4, 6, testing::random_vector(96, 77)};
        const auto groups = group(cube);
        const CoefficientCube back = ungroup(groups);
        CHECK(back.values == cube.values);
        CHECK(group(back).size() == groups.size());

        auto broken = groups;
        broken[2].values.pop_back();
        CHECK_THROWS_AS(ungroup(broken), Error);
        CHECK_THROWS_AS(ungroup(std::span(groups).first(3)), Error);
    }

    TEST_CASE("frame of identical blocks gives constant groups and preserves energy") {
        Frame f(32, 32);
        for (std::size_t y = 0; y < 32; ++y)
            for (std::size_t x = 0; x < 32; ++x) f.at(x, y) = static_cast<double>((x % 16) * 3 + (y % 16));
        const auto cube = forward_transform(partition(f, 16));
        for (const auto& g : group(cube)) CHECK(g.variance < 1e-18 + 1e-12 * std::abs(g.mean));

        const Frame r = testing::random_frame(64, 48, 5);
        const auto rc = forward_transform(partition(r, 16));
        double ep = 0.0, ecoef = 0.0;
        for (double v : r.pixels) ep += v * v;
        for (double v : rc.values) ecoef += v * v;
        CHECK(ecoef == doctest::Approx(ep).epsilon(1e-9));
        CHECK(reassemble(inverse_transform(rc), 64, 48).pixels.size() == r.pixels.size());
        const Frame back = reassemble(inverse_transform(rc), 64, 48);
        for (std::size_t i = 0; i < r.pixels.size(); ++i) CHECK(back.pixels[i] == doctest::Approx(r.pixels[i]).epsilon(1e-9));
    }

    TEST_CASE("describe: population variance and exact sparsity") {
        const std::vector<double> v{0.0, 2.0, 0.0, 4.0};
        const auto s = describe(v);
        CHECK(s.sparsity == 2);
        CHECK(s.mean == doctest::Approx(1.5));
        CHECK(s.variance == doctest::Approx(2.75));
    }
}
