// One line per acceptance criterion; exit status 0 iff all pass.
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dimsob/harness.hpp"
#include "dimsob/isoprofile.hpp"
#include "dimsob/oracle.hpp"
#include "dimsob/parallel.hpp"
#include "dimsob/rispace.hpp"

using namespace dimsob;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// int_0^1 (t/I_n(t)) dt/(t (ln 1/t)^{1/2}) with I_n = n gamma_n^{1/n} t^{1-1/n}, substituting t = exp(-y^2)
double rn_constant_oracle(int n) {
    double gamma_n = std::pow(M_PI, n / 2.0) / boost::math::tgamma(1.0 + n / 2.0);
    double c = n * std::pow(gamma_n, 1.0 / n);
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double y) { return 2.0 * std::exp(-y * y / n) / c; }, 0.0, INFINITY, 1e-14);
}

Outcome c1_constants() {
    auto G = WeightFunction::log_half();
    double worst = 0.0, worst_t = 0.0;
    for (int n = 1; n <= 50; ++n) {
        double ref = rn_constant_oracle(n);
        worst = std::max(worst, rel(geometry_constant(GeometryKind::rn, n), ref));
        worst_t = std::max(worst_t, rel(transference_integral(ProfileSpec::power_rn(n), G, 1.0), ref));
    }
    return {worst < 1e-7 && worst_t < 1e-7,
            fmt("max rel err closed form %.2e, quadrature %.2e (n = 1..50)", worst, worst_t)};
}

Outcome c2_limits() {
    const int n = 10000;
    double ball = rel(geometry_constant(GeometryKind::ball, n), std::sqrt(2.0) / 2.0 * M_PI);
    double sphere = rel(sphere_printed_constant(n), std::sqrt(2.0) * M_PI);
    double man1 = rel(geometry_constant(GeometryKind::manifold, n, 1.0), M_PI);
    double man4 = rel(geometry_constant(GeometryKind::manifold, n, 4.0), M_PI / 2.0);
    double lim = std::max({rel(geometry_limit(GeometryKind::ball), std::sqrt(2.0) / 2.0 * M_PI),
                           rel(sphere_printed_limit(), std::sqrt(2.0) * M_PI),
                           rel(geometry_limit(GeometryKind::manifold, 9.0), M_PI / 3.0)});
    double worst = std::max({ball, sphere, man1, man4});
    return {worst < 0.01 && lim < 1e-12,
            fmt("rel err at n = 1e4: ball %.2e, sphere %.2e, manifold k=1 %.2e, k=4 %.2e; limits %.1e", ball, sphere,
                man1, man4, lim)};
}

Outcome c3_supremum() {
    double best = 0.0, prev = INFINITY;
    bool monotone = true;
    for (int n = 1; n <= 100; ++n) {
        double c = geometry_constant(GeometryKind::rn, n);
        best = std::max(best, c);
        if (!(c < prev)) monotone = false;
        prev = c;
    }
    double target = std::sqrt(M_PI) / 2.0;
    return {std::fabs(best - target) <= 1e-9 && monotone,
            fmt("max = %.12f, sqrt(pi)/2 = %.12f, decreasing: %s", best, target, monotone ? "yes" : "no")};
}

Outcome c4_oracle_suite() {
    auto r = run_oracle_suite("1d", 500, 20240601, default_jobs());
    int violations = 0, points = 0;
    for (const auto& rep : r.reports) {
        violations += rep.violations;
        points += rep.checks;
    }
    return {r.passed == r.total && violations == 0 && r.total == 500 && points == 20000,
            fmt("%d/%d reports pass, %d t-points, %d violations", r.passed, r.total, points, violations)};
}

Outcome c5_matrix() {
    std::vector<ExperimentConfig> cfgs;
    for (auto th : {Theorem::main1, Theorem::main2, Theorem::teo01, Theorem::inclusion})
        for (double p : {1.5, 2.0, 3.0})
            for (auto g : {Geometry::rn, Geometry::ball, Geometry::sphere})
                for (auto s : {Shape::linear, Shape::quadratic, Shape::bump, Shape::cosine, Shape::exp})
                    for (int n = 2; n <= 10; ++n) {
                        ExperimentConfig c;
                        c.theorem = th;
                        c.space = SpaceSpec::lp(p);
                        c.geometry = g;
                        c.family = Family::radial(s);
                        c.n = n;
                        cfgs.push_back(c);
                    }
    std::vector<int> status(cfgs.size(), 0);  // 1 pass, 2 vacuous pass, 0 fail, -1 error
    std::vector<std::string> errors(cfgs.size());
    parallel_for(cfgs.size(), default_jobs(), [&](std::size_t i) {
        try {
            auto r = verify(cfgs[i]);
            status[i] = r.pass ? (r.vacuous ? 2 : 1) : 0;
        } catch (const std::exception& e) {
            status[i] = -1;
            errors[i] = e.what();
        }
    });
    int pass = 0, vacuous = 0, fail = 0;
    std::string first;
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        if (status[i] == 1) ++pass;
        if (status[i] == 2) ++vacuous;
        if (status[i] <= 0) {
            ++fail;
            if (first.empty())
                first = " first: " + to_string(cfgs[i].theorem) + " " + cfgs[i].space.describe() + " " +
                        to_string(cfgs[i].geometry) + " n=" + std::to_string(cfgs[i].n) + " " + errors[i];
        }
    }
    return {fail == 0, fmt("%zu configs: %d pass, %d vacuous (infinite rhs), %d fail", cfgs.size(), pass, vacuous, fail) + first};
}

Outcome c6_iteration() {
    double worst = 0.0;
    int count = 0;
    for (int k : {2, 3}) {
        auto X = SpaceSpec::lp(2.0);
        auto inner = SpaceSpec::log_refined(X, k - 1, WeightVariant::ln);
        double factor = 2.0 * k / (k - 1.0);
        for (int i = 0; i < 50; ++i) {
            auto f = random_profile(606, std::uint64_t(i + 100 * k));
            double lhs = xklog_norm(inner, 1, f, WeightVariant::ln);
            double rhs = xklog_norm(X, k, f, WeightVariant::ln);
            worst = std::max(worst, rel(lhs / rhs, factor));
            ++count;
        }
    }
    return {worst < 1e-6, fmt("%d profiles, max rel deviation from 2k/(k-1): %.2e", count, worst)};
}

Outcome c7_sup_formula() {
    double worst = 0.0;
    for (double r : {0.5, 1.0 / M_E, 0.1})
        for (int k : {1, 2, 3}) {
            double expect = k <= 2 ? 1.0 : std::sqrt(1.0 + std::log(1.0 / r));
            worst = std::max({worst, std::fabs(log_ratio_sup_numeric(k, r) - expect),
                              std::fabs(log_ratio_sup_closed(k, r) - expect)});
        }
    return {worst < 1e-6, fmt("max abs deviation %.2e", worst)};
}

// 10^6-point midpoint rule in y = (ln 1/t)^{1/2} on [0, Y]; N(t) = (int_0^t f*^q)^{1/q} exactly.
double small_lebesgue_riemann(double q, const StepProfile& f) {
    const std::size_t M = 1000000;
    const double Y = std::sqrt(q * 60.0) + 1.0;
    const double h = Y / M;
    std::vector<double> pref(f.size() + 1, 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) pref[j + 1] = pref[j] + std::pow(f.value(j), q) * f.width(j);
    double acc = 0.0;
    std::size_t j = f.size() - 1;
    for (std::size_t i = 0; i < M; ++i) {
        double y = (i + 0.5) * h;
        double t = std::exp(-y * y);
        while (j > 0 && f.left(j) >= t) --j;
        double Nq = pref[j] + std::pow(f.value(j), q) * (t - f.left(j));
        acc += std::pow(Nq, 1.0 / q) * 2.0;
    }
    return acc * h;
}

Outcome c8_small_lebesgue() {
    auto G = WeightFunction::log_half();
    double worst_lhs = 0.0, worst_riemann = 0.0;
    const double qs[] = {1.25, 1.5, 2.0, 3.0};
    for (int i = 0; i < 100; ++i) {
        auto f = random_profile(808, i);
        double q = qs[i % 4];
        double a = small_lebesgue_norm(q, f);
        double b = lhs_functional(f, SpaceSpec::lp(q), G, LhsMode::plain, 1.0);
        worst_lhs = std::max(worst_lhs, rel(a, b));
        worst_riemann = std::max(worst_riemann, rel(a, small_lebesgue_riemann(q, f)));
    }
    return {worst_lhs < 1e-8 && worst_riemann < 1e-5,
            fmt("max rel gap vs functional %.2e, vs 1e6-point Riemann %.2e", worst_lhs, worst_riemann)};
}

Outcome c9_chain() {
    int pass = 0, total = 0;
    double min_ratio = INFINITY;
    for (int i = 0; i < 100; ++i) {
        auto f = random_profile(909, i);
        for (auto X : {SpaceSpec::lp(1.0), SpaceSpec::lp(2.0)}) {
            auto r = chain_inequality_check(f, X);
            ++total;
            pass += r.pass;
            if (r.lhs > 0.0) min_ratio = std::min(min_ratio, r.rhs / r.lhs);
        }
    }
    auto G = WeightFunction::log_half();
    boost::math::quadrature::tanh_sinh<double> ts;
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
        double s = std::pow(10.0, -0.4 * i);
        double closed = 2.0 * std::sqrt(std::log(1.0 / s));
        double lib = G.integral_y(0.0, std::sqrt(std::log(1.0 / s)));
        // u = ln(1/t): dt/(t (ln 1/t)^{1/2}) = u^{-1/2} du
        double ts_ref = ts.integrate([](double u) { return 1.0 / std::sqrt(u); }, 0.0, std::log(1.0 / s), 1e-15);
        worst = std::max({worst, std::fabs(lib - closed), std::fabs(ts_ref - closed)});
    }
    return {pass == total && worst < 1e-10,
            fmt("%d/%d chain checks, min integral/(2-weighted norm) %.4f; antiderivative max err %.1e", pass, total,
                min_ratio, worst)};
}

Outcome c10_cube_sweep() {
    ExperimentConfig c;
    c.geometry = Geometry::cube;
    c.family = Family::tensor(TensorMode::first, Shape1D::identity);
    c.space = SpaceSpec::lp(2.0);
    c.samples = 1000000;
    c.seed = 1234;
    auto a = dimension_sweep(c, 2, 20, default_jobs());
    auto b = dimension_sweep(c, 2, 20, 1);
    const double C = boost::math::tgamma(1.5);
    bool bounded = true, same = a.rows.size() == b.rows.size(), ok = true;
    double worst = 0.0, band = 0.0;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& r = a.rows[i];
        ok = ok && r.ok;
        if (r.ratio > C + r.mc_halfwidth) bounded = false;
        worst = std::max(worst, r.ratio);
        band = std::max(band, r.mc_halfwidth);
        if (same) same = r.ratio == b.rows[i].ratio && r.mc_halfwidth == b.rows[i].mc_halfwidth;
    }
    return {ok && bounded && same, fmt("n = 2..20: max ratio %.6f, bound sqrt(pi)/2 = %.6f, max band %.2e, deterministic: %s",
                                       worst, C, band, same ? "yes" : "no")};
}

// ln h(r)/ln r from ratios ||E_r f||/||f|| over random profiles
double dilation_index_estimate(const SpaceSpec& X, double r) {
    double h = 0.0;
    for (int i = 0; i < 40; ++i) {
        auto f = random_profile(1111, i);
        h = std::max(h, ri_norm(X, dilation(f, r)) / ri_norm(X, f));
    }
    return std::log(h) / std::log(r);
}

Outcome c11_boyd() {
    double worst = 0.0;
    bool flagged = true;
    for (double p : {1.5, 2.0, 4.0}) {
        auto X = SpaceSpec::lp(p);
        auto b = boyd_indices(X);
        double est = dilation_index_estimate(X, 1e-3);
        worst = std::max({worst, std::fabs(b.lower - 1 / p), std::fabs(b.upper - 1 / p), std::fabs(est - 1 / p)});
        for (double a : {1 / p, 1 / p + 0.05, 0.95})
            if (a < 1.0 && !std::isinf(qa_norm_bound(X, a))) flagged = false;
        if (std::isinf(qa_norm_bound(X, 1 / p - 0.05))) flagged = false;
    }
    return {worst < 1e-2 && flagged,
            fmt("max |index - 1/p| %.2e; Q_a divergence flagged for a >= 1/p: %s", worst, flagged ? "yes" : "no")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double budget_s;
    };
    std::vector<Criterion> all{
        {1, "constant reproduction", c1_constants, 5},
        {2, "stated limits", c2_limits, 1},
        {3, "dimension-free supremum", c3_supremum, 1},
        {4, "oscillation and Polya-Szego oracle suite", c4_oracle_suite, 30},
        {5, "theorem verification matrix", c5_matrix, 300},
        {6, "iteration identity", c6_iteration, 30},
        {7, "supremum formula", c7_sup_formula, 60},
        {8, "small Lebesgue coincidence", c8_small_lebesgue, 60},
        {9, "chain inequality", c9_chain, 60},
        {10, "Monte Carlo cube sweep", c10_cube_sweep, 600},
        {11, "Boyd indices", c11_boyd, 60},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs <= c.budget_s;
        bool ok = o.pass && in_time;
        failed += !ok;
        std::printf("[%s] %2d %s: %s; %.2f s (limit %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    c.budget_s, in_time ? "" : " TIME EXCEEDED");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
