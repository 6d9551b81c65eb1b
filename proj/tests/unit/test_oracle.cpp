#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dimsob/error.hpp"
#include "dimsob/oracle.hpp"

using namespace dimsob;
using doctest::Approx;

TEST_CASE("piecewise-linear rearrangement") {
    auto id = exact_rearrangement_pl(GridFunction1D::sample([](double x) { return x; }, 50));
    auto tent = exact_rearrangement_pl(GridFunction1D::sample([](double x) { return std::fabs(2 * x - 1); }, 50));
    for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        CHECK(id(s) == Approx(1 - s));
        CHECK(tent(s) == Approx(1 - s));
    }
    auto c = exact_rearrangement_pl(GridFunction1D::sample([](double) { return 0.4; }, 10));
    CHECK(c(0.3) == Approx(0.4));
    CHECK(id.integral(0.5) == Approx(0.375));
}

TEST_CASE("oscillation inequality on analytic examples") {
    auto tg = suite_tgrid();
    auto r = check_oscillation(GridFunction1D::sample([](double x) { return x; }, 64), ProfileSpec::constant(1.0), tg);
    CHECK(r.pass);
    CHECK(r.strict_violations == 0);
    CHECK(r.checks == 20);
    auto c = check_oscillation(GridFunction1D::sample([](double) { return 2.0; }, 64), ProfileSpec::constant(1.0), tg);
    CHECK(c.pass);
    CHECK(c.lhs == Approx(0.0));
}

TEST_CASE("Polya-Szego") {
    auto tg = suite_tgrid();
    auto eq = check_polya_szego(GridFunction1D::sample([](double x) { return x; }, 64), tg);
    CHECK(eq.pass);
    CHECK(eq.margin == Approx(0.0).epsilon(1e-12));
    auto strict = check_polya_szego(GridFunction1D::sample([](double x) { return (2 * x - 1) * (2 * x - 1); }, 200), tg);
    CHECK(strict.pass);
    CHECK(strict.strict_violations == 0);
    auto c = check_polya_szego(GridFunction1D::sample([](double) { return 1.0; }, 20), tg);
    CHECK(c.pass);
}

TEST_CASE("Riemann norm oracle") {
    CHECK(riemann_norm_oracle(SpaceSpec::lp(2), StepProfile::indicator(0.25), 1000000) == Approx(0.5).epsilon(1e-5));
    CHECK(riemann_norm_oracle(SpaceSpec::marcinkiewicz(ConcaveFn::power(0.5)), StepProfile::indicator(0.09, 2.0), 1000000) ==
          Approx(0.6).epsilon(1e-5));
    CHECK_THROWS_AS(riemann_norm_oracle(SpaceSpec::lp(2), StepProfile::constant(1.0), 10), InvalidArgument);
    for (int i = 0; i < 5; ++i) {
        auto f = random_profile(3, i);
        for (auto s : {"lp:1.5", "lorentz:2,1.5", "lambda:pow:0.4", "orlicz:pow:3"}) {
            auto X = SpaceSpec::parse(s);
            CHECK(riemann_norm_oracle(X, f, 100000) == Approx(ri_norm(X, f)).epsilon(1e-6));
        }
    }
}

TEST_CASE("grid perimeter") {
    std::vector<double> hs{0.05, 0.04, 0.03, 0.02};
    auto half = CellMask::from_predicate(64, [](double x, double) { return x < 0.5; });
    CHECK(perimeter_grid(half, hs) == Approx(1.0).epsilon(1e-6));
    auto sq = CellMask::from_predicate(64, [](double x, double y) {
        return x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75;
    });
    CHECK(perimeter_grid(sq, hs) == Approx(2.0).epsilon(1e-6));
    auto disk = CellMask::from_predicate(512, [](double x, double y) {
        return (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) < 1.0 / 16;
    });
    CHECK(perimeter_grid(disk, hs) == Approx(M_PI / 2).epsilon(0.02));
}

TEST_CASE("suites are deterministic") {
    auto a = run_oracle_suite("1d", 10, 99, 1);
    auto b = run_oracle_suite("1d", 10, 99, 4);
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) CHECK(a.reports[i].lhs == b.reports[i].lhs);
    CHECK(a.passed == a.total);
    auto n = run_oracle_suite("norms", 5, 1, 2);
    CHECK(n.passed == n.total);
    CHECK_THROWS_AS(run_oracle_suite("3d", 1, 0), InvalidArgument);
}

TEST_CASE("2-D suite") {
    auto r = run_oracle_suite("2d", 3, 5, 2);
    CHECK(r.total == 3);
    CHECK(r.passed == r.total);
}
