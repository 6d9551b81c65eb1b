#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dimsob/error.hpp"
#include "dimsob/rearrange.hpp"

using namespace dimsob;

TEST_CASE("rearrangement sorts by value and keeps measure") {
    auto f = decreasing_rearrangement(WeightedSample::make({{3, 0.25}, {1, 0.5}, {2, 0.25}}));
    REQUIRE(f.size() == 3);
    CHECK(f.value(0) == 3);
    CHECK(f.right(0) == doctest::Approx(0.25));
    CHECK(f.value(1) == 2);
    CHECK(f.right(1) == doctest::Approx(0.5));
    CHECK(f.value(2) == 1);
    CHECK(f.right(2) == 1.0);
}

TEST_CASE("constant and indicator samples") {
    auto c = decreasing_rearrangement(WeightedSample::make({{1.7, 1.0}}));
    CHECK(c.size() == 1);
    CHECK(c(0.9) == 1.7);
    auto chi = decreasing_rearrangement(WeightedSample::make({{1, 0.3}, {0, 0.7}}));
    CHECK(chi(0.29) == 1.0);
    CHECK(chi(0.31) == 0.0);
    CHECK(chi.right(0) == doctest::Approx(0.3));
}

TEST_CASE("bad weights are rejected") {
    CHECK_THROWS_AS(WeightedSample::make({{1, 0.3}, {0, 0.3}}), InvalidArgument);
    CHECK_THROWS_AS(WeightedSample::make({{1, -0.5}, {0, 1.5}}), InvalidArgument);
    CHECK_THROWS_AS(WeightedSample::make({}), InvalidArgument);
}

TEST_CASE("rearrangement is equimeasurable") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(200);
        for (auto& x : v) x = U(rng);
        auto f = rearrange_equal_weights(v);
        for (double y : {-0.5, 0.0, 0.3, 0.9}) {
            double count = 0;
            for (double x : v) count += x > y;
            CHECK(f.distribution(y) == doctest::Approx(count / 200).epsilon(1e-12));
        }
        for (std::size_t j = 1; j < f.size(); ++j) CHECK(f.value(j) < f.value(j - 1));
    }
}

TEST_CASE("maximal average") {
    auto chi = StepProfile::indicator(0.4);
    CHECK(maximal_average(chi, 0.2) == doctest::Approx(1.0));
    CHECK(maximal_average(chi, 0.8) == doctest::Approx(0.5));
    CHECK(maximal_average(StepProfile::constant(2.5), 0.37) == doctest::Approx(2.5));
}

TEST_CASE("oscillation f** - f*") {
    auto osc = oscillation_profile(StepProfile::indicator(0.4));
    CHECK(osc(0.3) == doctest::Approx(0.0));
    CHECK(osc(0.8) == doctest::Approx(0.5));
    auto c = oscillation_profile(StepProfile::constant(3.0));
    for (double t : {0.01, 0.5, 0.99}) CHECK(c(t) == doctest::Approx(0.0));
}

TEST_CASE("median") {
    CHECK(median_value(StepProfile::indicator(0.25)) == 0.0);
    CHECK(median_value(StepProfile::indicator(0.75)) == 1.0);
    std::vector<double> b, v;
    for (int i = 1; i <= 1000; ++i) {
        b.push_back(i / 1000.0);
        v.push_back(1.0 - (i - 0.5) / 1000.0);
    }
    CHECK(median_value(StepProfile::make(b, v)) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("restrict") {
    auto r = restrict(StepProfile::indicator(0.5), 0.25, RestrictMode::truncate);
    CHECK(r == StepProfile::indicator(0.25));
    auto z = restrict(StepProfile::constant(4.0), 0.6, RestrictMode::subtract_tail);
    CHECK(z.is_zero());
    auto p = StepProfile::make({0.25, 0.5, 0.75, 1.0}, {0.875, 0.625, 0.375, 0.125});
    auto s = restrict(p, 0.5, RestrictMode::subtract_tail);
    CHECK(s(0.1) == doctest::Approx(0.5));
    CHECK(s(0.3) == doctest::Approx(0.25));
    CHECK(s(0.7) == 0.0);
    CHECK_THROWS_AS(restrict(p, 1.0, RestrictMode::truncate), InvalidArgument);
}

TEST_CASE("coarsen keeps the integral") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(double(i));
    auto f = rearrange_equal_weights(v);
    auto g = coarsen(f, 16);
    CHECK(g.size() <= 16);
    CHECK(g.integral(1.0) == doctest::Approx(f.integral(1.0)).epsilon(1e-12));
    CHECK(g.integral(0.25) == doctest::Approx(f.integral(0.25)).epsilon(1e-12));
}

TEST_CASE("shift in measure") {
    auto p = StepProfile::make({0.5, 1.0}, {2.0, 1.0});
    auto up = shift_in_measure(p, 0.1);
    CHECK(up(0.55) == 2.0);
    CHECK(up(0.65) == 1.0);
    auto down = shift_in_measure(p, -0.1);
    CHECK(down(0.45) == 1.0);
    CHECK(down(0.35) == 2.0);
}
