#include "sparsecast/allocation.hpp"
#include "sparsecast/error.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace sparsecast;

TEST_SUITE("allocation") {
    TEST_CASE("single group gets unit power") {
        for (double lambda : {0.01, 1.0, 37.0}) {
            for (std::size_t m : {1u, 5u, 1024u}) {
                const std::vector<double> v{lambda};
                const std::vector<std::size_t> l{m};
                const auto g = lemma1_gains(v, l);
                CHECK(g[0] == doctest::Approx(1.0 / std::sqrt(lambda)).epsilon(1e-12));
                CHECK(g[0] * g[0] * lambda == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("hand-evaluated two-group case") {
        const std::vector<double> v{4.0, 1.0};
        const std::vector<std::size_t> l{1, 1};
        const auto g = lemma1_gains(v, l);
        CHECK(g[0] == doctest::Approx(std::pow(4.0, -0.25) * std::sqrt(2.0 / 3.0)).epsilon(1e-12));
        CHECK(g[0] == doctest::Approx(0.5774).epsilon(1e-4));
        CHECK(g[1] == doctest::Approx(0.8165).epsilon(1e-4));
        CHECK(g[0] * g[0] * 4.0 + g[1] * g[1] * 1.0 == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("symmetric groups get equal gains") {
        const std::vector<double> v{2.5, 2.5};
        const std::vector<std::size_t> l{3, 3};
        const auto g = lemma1_gains(v, l);
        CHECK(g[0] == g[1]);
        CHECK(g[0] * g[0] * 2.5 == doctest::Approx(1.0));
    }

    TEST_CASE("zero-variance groups and degenerate input") {
        const std::vector<double> v{0.0, 9.0};
        const std::vector<std::size_t> l{4, 4};
        const auto g = lemma1_gains(v, l);
        CHECK(g[0] == 0.0);
        CHECK(g[1] > 0.0);
        CHECK_THROWS_AS(lemma1_gains(std::vector<double>{0.0, 0.0}, l), Error);
        try {
            lemma1_gains(std::vector<double>{0.0, 0.0}, l);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::all_variances_zero);
        }
        CHECK_THROWS_AS(lemma1_gains(std::vector<double>{-1.0, 1.0}, l), Error);
        CHECK_THROWS_AS(lemma1_gains(std::vector<double>{1.0}, l), Error);
    }

    TEST_CASE("average power is one for random instances") {
        sparsecast::GaussianSource rng(17);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t groups = 1 + static_cast<std::size_t>(rng.uniform() * 20);
            std::vector<double> v(groups);
            std::vector<std::size_t> l(groups);
            for (std::size_t j = 0; j < groups; ++j) {
                v[j] = std::exp(6.0 * rng.normal());
                l[j] = 1 + static_cast<std::size_t>(rng.uniform() * 1024);
            }
            const auto alloc = PowerAllocation::compute(v, l);
            CHECK(alloc.average_power() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    TEST_CASE("mmse estimate") {
        const std::vector<double> y{2.0, -4.0};
        CHECK(mmse_estimate(y, 2.0, 3.0, 1.0, 0.0) == std::vector<double>{2.0, -1.0});
        const auto half = mmse_estimate(y, 1.0, 1.0, 0.5, 1.0);
        CHECK(half[0] == doctest::Approx(1.5));
        CHECK(half[1] == doctest::Approx(-1.5));
        CHECK(mmse_estimate(y, 1.0, 0.0, 7.0, 1.0) == std::vector<double>{7.0, 7.0});
        CHECK(mmse_estimate(y, 0.0, 4.0, 7.0, 1.0) == std::vector<double>{7.0, 7.0});
    }
}
