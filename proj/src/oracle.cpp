#include "dimsob/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dimsob/error.hpp"
#include "dimsob/numeric.hpp"
#include "dimsob/parallel.hpp"

namespace dimsob {

GridFunction1D GridFunction1D::make(std::vector<double> values) {
    if (values.size() < 3) throw InvalidArgument("grid function: need m >= 2 cells");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument("grid function: values must be finite");
    return {std::move(values)};
}

GridFunction1D GridFunction1D::sample(const std::function<double(double)>& f, std::size_t m) {
    std::vector<double> v(m + 1);
    for (std::size_t i = 0; i <= m; ++i) v[i] = f(double(i) / double(m));
    return make(std::move(v));
}

double GridFunction1D::range() const {
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

GridFunction2D GridFunction2D::make(std::size_t m, std::vector<double> values) {
    if (m < 4) throw InvalidArgument("grid function: need m >= 4");
    if (values.size() != m * m) throw InvalidArgument("grid function: expected m*m values");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument("grid function: values must be finite");
    return {m, std::move(values)};
}

GridFunction2D GridFunction2D::sample(const std::function<double(double, double)>& f, std::size_t m) {
    std::vector<double> v(m * m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) v[j * m + i] = f((i + 0.5) / double(m), (j + 0.5) / double(m));
    return make(m, std::move(v));
}

double GridFunction2D::range() const {
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

double PiecewiseLinearProfile::operator()(double t) const {
    if (t <= 0.0) return v.front();
    if (t >= 1.0) return v.back();
    std::size_t k = std::size_t(std::upper_bound(s.begin(), s.end(), t) - s.begin());
    if (k >= s.size()) return v.back();
    double a = s[k - 1], b = s[k];
    if (b <= a) return v[k];
    return v[k - 1] + (v[k] - v[k - 1]) * (t - a) / (b - a);
}

double PiecewiseLinearProfile::integral(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    CompensatedSum acc;
    for (std::size_t k = 1; k < s.size() && s[k - 1] < t; ++k) {
        double b = std::min(s[k], t);
        acc += 0.5 * (v[k - 1] + (*this)(b)) * (b - s[k - 1]);
    }
    return acc.value();
}

StepProfile PiecewiseLinearProfile::to_step(std::size_t pieces) const {
    if (pieces == 0) pieces = 1;
    std::vector<double> br, val;
    for (std::size_t k = 1; k < s.size(); ++k) {
        double a = s[k - 1], b = s[k];
        if (b <= a) continue;
        for (std::size_t i = 0; i < pieces; ++i) {
            double x0 = a + (b - a) * double(i) / double(pieces);
            double x1 = i + 1 == pieces ? b : a + (b - a) * double(i + 1) / double(pieces);
            if (x1 <= x0) continue;
            br.push_back(x1);
            val.push_back((*this)(x0));
        }
    }
    br.back() = 1.0;
    return StepProfile::make(std::move(br), std::move(val));
}

StepProfile PiecewiseLinearProfile::derivative_rearranged() const {
    std::vector<WeightedSample::Entry> e;
    for (std::size_t k = 1; k < s.size(); ++k) {
        double w = s[k] - s[k - 1];
        if (w <= 0.0) continue;
        e.push_back({(v[k - 1] - v[k]) / w, w});
    }
    return decreasing_rearrangement(WeightedSample::make(std::move(e)));
}

PiecewiseLinearProfile exact_rearrangement_pl(const GridFunction1D& f) {
    const auto& x = f.values;
    const std::size_t m = f.m();
    const double h = 1.0 / double(m);
    std::vector<double> levels(x);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // measure of {f > y} (strict) or {f >= y}
    auto measure = [&](double y, bool strict) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < m; ++i) {
            double lo = std::min(x[i], x[i + 1]), hi = std::max(x[i], x[i + 1]);
            if (hi > lo)
                acc += h * std::clamp((hi - y) / (hi - lo), 0.0, 1.0);
            else if (strict ? lo > y : lo >= y)
                acc += h;
        }
        return acc.value();
    };

    PiecewiseLinearProfile out;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        double a = k == 0 ? 0.0 : measure(levels[k], true);
        double b = k + 1 == levels.size() ? 1.0 : measure(levels[k], false);
        if (out.s.empty() || a > out.s.back()) {
            out.s.push_back(a);
            out.v.push_back(levels[k]);
        } else {
            out.v.back() = levels[k];
        }
        if (b > out.s.back()) {
            out.s.push_back(b);
            out.v.push_back(levels[k]);
        }
    }
    out.s.front() = 0.0;
    if (out.s.size() == 1) {
        out.s.push_back(1.0);
        out.v.push_back(out.v.front());
    }
    out.s.back() = 1.0;
    return out;
}

StepProfile gradient_rearranged(const GridFunction1D& f) {
    const std::size_t m = f.m();
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = std::fabs(f.values[i + 1] - f.values[i]) * double(m);
    return rearrange_equal_weights(std::move(g));
}

StepProfile gradient_rearranged(const GridFunction2D& f) {
    const std::size_t m = f.m;
    const double dm = double(m);
    std::vector<double> g(m * m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            double gx, gy;
            if (i == 0)
                gx = (f.at(1, j) - f.at(0, j)) * dm;
            else if (i + 1 == m)
                gx = (f.at(m - 1, j) - f.at(m - 2, j)) * dm;
            else
                gx = (f.at(i + 1, j) - f.at(i - 1, j)) * dm * 0.5;
            if (j == 0)
                gy = (f.at(i, 1) - f.at(i, 0)) * dm;
            else if (j + 1 == m)
                gy = (f.at(i, m - 1) - f.at(i, m - 2)) * dm;
            else
                gy = (f.at(i, j + 1) - f.at(i, j - 1)) * dm * 0.5;
            g[j * m + i] = std::hypot(gx, gy);
        }
    return rearrange_equal_weights(std::move(g));
}

double oracle_slack(double range, std::size_t m) { return 10.0 * range / double(m); }

namespace {

void record(VerificationReport& rep, double lhs, double rhs, double slack, bool first) {
    double scale = 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    if (lhs > rhs + slack) ++rep.violations;
    if (lhs > rhs + scale) ++rep.strict_violations;
    if (first || rhs - lhs < rep.margin) {
        rep.lhs = lhs;
        rep.rhs = rhs;
        rep.margin = rhs - lhs;
    }
}

void finish(VerificationReport& rep, std::size_t checks) {
    rep.checks = int(checks);
    rep.pass = rep.violations == 0;
}

}  // namespace

VerificationReport check_oscillation(const GridFunction1D& f, const ProfileSpec& spec, const std::vector<double>& tgrid) {
    VerificationReport rep;
    rep.check = "oscillation_1d";
    rep.config["m"] = std::to_string(f.m());
    rep.config["profile"] = spec.describe();
    rep.disc_slack = oracle_slack(f.range(), f.m());
    auto fs = exact_rearrangement_pl(f);
    auto grad = gradient_rearranged(f);
    bool first = true;
    for (double t : tgrid) {
        if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("oscillation check: t must lie in (0,1)");
        double osc = fs.integral(t) / t - fs(t);
        double lhs = osc * profile_eval(spec, t) / t;
        double rhs = grad.integral(t) / t;
        record(rep, lhs, rhs, rep.disc_slack, first);
        first = false;
    }
    finish(rep, tgrid.size());
    return rep;
}

VerificationReport check_oscillation(const GridFunction2D& f, const ProfileSpec& spec, const std::vector<double>& tgrid) {
    VerificationReport rep;
    rep.check = "oscillation_2d";
    rep.config["m"] = std::to_string(f.m);
    rep.config["profile"] = spec.describe();
    rep.disc_slack = oracle_slack(f.range(), f.m);
    auto fs = rearrange_equal_weights(f.values);
    auto grad = gradient_rearranged(f);
    bool first = true;
    for (double t : tgrid) {
        if (!(t > 0.0 && t < 0.5)) throw InvalidArgument("oscillation check (2-D): t must lie in (0,1/2)");
        double osc = fs.integral(t) / t - fs(t);
        double lhs = osc * profile_eval(spec, t) / t;
        double rhs = grad.integral(t) / t;
        record(rep, lhs, rhs, rep.disc_slack, first);
        first = false;
    }
    finish(rep, tgrid.size());
    if (!rep.pass) rep.notes.push_back("estimator violated at resolution m = " + std::to_string(f.m));
    return rep;
}

VerificationReport check_polya_szego(const GridFunction1D& f, const std::vector<double>& tgrid) {
    VerificationReport rep;
    rep.check = "polya_szego_1d";
    rep.config["m"] = std::to_string(f.m());
    rep.disc_slack = oracle_slack(f.range(), f.m());
    auto deriv = exact_rearrangement_pl(f).derivative_rearranged();
    auto grad = gradient_rearranged(f);
    bool first = true;
    for (double t : tgrid) {
        if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("Polya-Szego check: t must lie in (0,1]");
        record(rep, deriv.integral(t), grad.integral(t), rep.disc_slack, first);
        first = false;
    }
    finish(rep, tgrid.size());
    return rep;
}

namespace {

double riemann_lp_loghalf_like(const SpaceSpec& base, int k, WeightVariant variant, const StepProfile& f,
                               std::size_t resolution) {
    const double b1 = f.right(0);
    const bool lp = base.is_lp();
    const double p = lp ? base.lp_exponent() : 40.0;
    const double y1 = b1 < 1.0 ? std::sqrt(std::log(1.0 / b1)) : 0.0;
    const double Y = y1 + std::sqrt(60.0 * p) + 5.0;
    const double h = Y / double(resolution);
    auto weight = [&](double y) {
        if (variant == WeightVariant::ln) return 2.0 * std::pow(y, k - 1);
        return 2.0 * y * std::pow(1.0 + y * y, 0.5 * k - 1.0);
    };
    CompensatedSum acc;
    if (lp) {
        // walk t upwards so completed steps accumulate
        std::size_t j = 0;
        double done = 0.0;
        for (std::size_t i = resolution; i-- > 0;) {
            double y = (i + 0.5) * h;
            double t = std::exp(-y * y);
            while (j + 1 < f.size() && f.right(j) <= t) {
                done += std::pow(std::fabs(f.value(j)), p) * f.width(j);
                ++j;
            }
            double np = done + std::pow(std::fabs(f.value(j)), p) * (t - f.left(j));
            acc += std::pow(np, 1.0 / p) * weight(y) * h;
        }
        return acc.value();
    }
    std::size_t outer = std::min<std::size_t>(resolution, 2000);
    double H = Y / double(outer);
    for (std::size_t i = 0; i < outer; ++i) {
        double y = (i + 0.5) * H;
        double t = std::exp(-y * y);
        if (t >= 1.0) t = std::nextafter(1.0, 0.0);
        double inner = riemann_norm_oracle(base, restrict(f, t, RestrictMode::truncate), 2000);
        acc += inner * weight(y) * H;
    }
    return acc.value();
}

}  // namespace

double riemann_norm_oracle(const SpaceSpec& space, const StepProfile& f, std::size_t resolution) {
    if (resolution < 1000) throw InvalidArgument("Riemann oracle: resolution must be >= 1000");
    const double N = double(resolution);
    auto mid = [&](std::size_t i) { return f((i + 0.5) / N); };
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, space::Lp>) {
                CompensatedSum acc;
                for (std::size_t i = 0; i < resolution; ++i) acc += std::pow(std::fabs(mid(i)), s.p) / N;
                return std::pow(acc.value(), 1.0 / s.p);
            } else if constexpr (std::is_same_v<T, space::LorentzPQ>) {
                if (std::isinf(s.q)) {
                    double best = 0.0;
                    for (std::size_t i = 0; i < resolution; ++i)
                        best = std::max(best, std::fabs(mid(i)) * std::pow((i + 1) / N, 1.0 / s.p));
                    return best;
                }
                CompensatedSum acc;
                double e = s.q / s.p;
                for (std::size_t i = 0; i < resolution; ++i)
                    acc += std::pow(std::fabs(mid(i)), s.q) * (std::pow((i + 1) / N, e) - std::pow(i / N, e));
                return std::pow(acc.value(), 1.0 / s.q);
            } else if constexpr (std::is_same_v<T, space::LorentzLambda>) {
                CompensatedSum acc;
                for (std::size_t i = 0; i < resolution; ++i) acc += std::fabs(mid(i)) * (s.phi((i + 1) / N) - s.phi(i / N));
                return acc.value();
            } else if constexpr (std::is_same_v<T, space::Marcinkiewicz>) {
                double best = 0.0;
                for (std::size_t i = 0; i < resolution; ++i) best = std::max(best, std::fabs(mid(i)) * s.phi((i + 1) / N));
                return best;
            } else if constexpr (std::is_same_v<T, space::Orlicz>) {
                double top = 0.0;
                for (std::size_t i = 0; i < resolution; ++i) top = std::max(top, std::fabs(mid(i)));
                if (top == 0.0) return 0.0;
                auto modular = [&](double lam) {
                    CompensatedSum acc;
                    for (std::size_t i = 0; i < resolution; ++i) acc += s.N(std::fabs(mid(i)) / lam) / N;
                    return acc.value();
                };
                double lo = top * 1e-6, hi = top;
                while (modular(hi) > 1.0) hi *= 2.0;
                while (modular(lo) <= 1.0 && lo > 1e-300) lo *= 0.5;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                    double m = 0.5 * (lo + hi);
                    (modular(m) > 1.0 ? lo : hi) = m;
                }
                return 0.5 * (lo + hi);
            } else {
                return riemann_lp_loghalf_like(*s.base, s.k, s.variant, f, resolution);
            }
        },
        space.v);
}

CellMask CellMask::make(std::size_t m, std::vector<unsigned char> cells) {
    if (m < 4) throw InvalidArgument("cell mask: need m >= 4");
    if (cells.size() != m * m) throw InvalidArgument("cell mask: expected m*m cells");
    return {m, std::move(cells)};
}

CellMask CellMask::from_predicate(std::size_t m, const std::function<bool(double, double)>& inside) {
    std::vector<unsigned char> c(m * m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) c[j * m + i] = inside((i + 0.5) / double(m), (j + 0.5) / double(m)) ? 1 : 0;
    return make(m, std::move(c));
}

namespace {

struct Run {
    double y0, y1;
};

std::vector<std::vector<Run>> column_runs(const CellMask& mask) {
    const std::size_t m = mask.m;
    std::vector<std::vector<Run>> cols(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = 0;
        while (j < m) {
            if (!mask.at(i, j)) {
                ++j;
                continue;
            }
            std::size_t start = j;
            while (j < m && mask.at(i, j)) ++j;
            cols[i].push_back({double(start) / double(m), double(j) / double(m)});
        }
    }
    return cols;
}

}  // namespace

double neighbourhood_area(const CellMask& mask, double h) {
    if (!(h > 0.0)) throw InvalidArgument("neighbourhood area: h must be positive");
    const std::size_t m = mask.m;
    const double dm = double(m);
    auto cols = column_runs(mask);
    auto slice = [&](double x) {
        std::vector<std::pair<double, double>> iv;
        long lo = std::max(0L, long(std::floor((x - h) * dm)));
        long hi = std::min(long(m) - 1, long(std::floor((x + h) * dm)));
        for (long i = lo; i <= hi; ++i) {
            double x0 = double(i) / dm, x1 = double(i + 1) / dm;
            double dx = x < x0 ? x0 - x : (x > x1 ? x - x1 : 0.0);
            if (dx >= h) continue;
            double half = dx == 0.0 ? h : std::sqrt(h * h - dx * dx);
            for (const auto& r : cols[std::size_t(i)]) iv.emplace_back(std::max(0.0, r.y0 - half), std::min(1.0, r.y1 + half));
        }
        if (iv.empty()) return 0.0;
        std::sort(iv.begin(), iv.end());
        double total = 0.0, a = iv[0].first, b = iv[0].second;
        for (std::size_t k = 1; k < iv.size(); ++k) {
            if (iv[k].first > b) {
                total += b - a;
                a = iv[k].first;
                b = iv[k].second;
            } else {
                b = std::max(b, iv[k].second);
            }
        }
        return total + (b - a);
    };
    std::vector<double> br{0.0, 1.0};
    for (std::size_t i = 0; i <= m; ++i) {
        double x = double(i) / dm;
        for (double c : {x - h, x, x + h})
            if (c > 0.0 && c < 1.0) br.push_back(c);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    CompensatedSum acc;
    for (std::size_t k = 1; k < br.size(); ++k) acc += integrate(slice, br[k - 1], br[k], 1e-13, 12).value;
    return acc.value();
}

double perimeter_grid(const CellMask& mask, const std::vector<double>& h_list) {
    std::size_t count = std::count(mask.cells.begin(), mask.cells.end(), 1);
    if (count == 0 || count == mask.cells.size()) throw InvalidArgument("perimeter: mask is empty or full");
    if (h_list.empty()) throw InvalidArgument("perimeter: need at least one h");
    for (std::size_t i = 0; i < h_list.size(); ++i)
        if (!(h_list[i] > 0.0) || (i > 0 && !(h_list[i] < h_list[i - 1])))
            throw InvalidArgument("perimeter: h_list must be positive and strictly decreasing");
    const double area = double(count) / double(mask.cells.size());
    std::vector<double> q;
    for (double h : h_list) q.push_back((neighbourhood_area(mask, h) - area) / h);
    if (q.size() == 1) return q[0];
    // q(h) = a + b h (+ c/h with three or more h: offset of the dilated staircase against the smooth boundary)
    const std::size_t K = q.size() >= 3 ? 3 : 2;
    double A[3][4] = {};
    for (std::size_t i = 0; i < q.size(); ++i) {
        double basis[3] = {1.0, h_list[i], 1.0 / h_list[i]};
        for (std::size_t r = 0; r < K; ++r) {
            for (std::size_t c = 0; c < K; ++c) A[r][c] += basis[r] * basis[c];
            A[r][3] += basis[r] * q[i];
        }
    }
    for (std::size_t c = 0; c < K; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < K; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        for (std::size_t j = 0; j < 4; ++j) std::swap(A[c][j], A[piv][j]);
        for (std::size_t r = 0; r < K; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            for (std::size_t j = c; j < 4; ++j) A[r][j] -= f * A[c][j];
        }
    }
    return A[0][3] / A[0][0];
}

std::vector<double> suite_tgrid(double t_max) {
    std::vector<double> t;
    for (int i = 1; i <= 20; ++i) t.push_back(t_max * double(i) / 21.0);
    return t;
}

GridFunction1D random_grid_function(std::uint64_t seed, std::uint64_t index, std::size_t m) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32), 1u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::size_t knots = 2 + std::size_t(U(rng) * 18.0);
    std::vector<double> kv(knots + 1);
    for (auto& v : kv) v = U(rng);
    std::vector<double> vals(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        double x = double(i) / double(m) * double(knots);
        std::size_t k = std::min(knots - 1, std::size_t(x));
        double w = x - double(k);
        vals[i] = kv[k] * (1.0 - w) + kv[k + 1] * w + 0.02 * (U(rng) - 0.5);
    }
    return GridFunction1D::make(std::move(vals));
}

StepProfile random_profile(std::uint64_t seed, std::uint64_t index, std::size_t max_steps) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32), 2u};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> K(1, 999);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::size_t steps = 1 + std::size_t(U(rng) * double(max_steps));
    std::vector<int> cuts;
    for (std::size_t i = 1; i < steps; ++i) cuts.push_back(K(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> br;
    for (int c : cuts) br.push_back(c / 1000.0);
    br.push_back(1.0);
    std::vector<double> v(br.size());
    for (auto& x : v) x = 0.01 + 1.99 * U(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    return StepProfile::make(std::move(br), std::move(v));
}

namespace {

SpaceSpec random_space(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    switch (int(U(rng) * 5.0)) {
        case 0: return SpaceSpec::lp(1.0 + 3.0 * U(rng));
        case 1: {
            double p = 1.2 + 2.8 * U(rng);
            return SpaceSpec::lorentz(p, U(rng) < 0.2 ? kInf : 1.0 + 3.0 * U(rng));
        }
        case 2: return SpaceSpec::lambda(ConcaveFn::power(0.1 + 0.9 * U(rng)));
        case 3: return SpaceSpec::marcinkiewicz(ConcaveFn::power(0.1 + 0.9 * U(rng)));
        default: return SpaceSpec::orlicz(YoungFn::power(1.0 + 3.0 * U(rng)));
    }
}

}  // namespace

OracleSuiteResult run_oracle_suite(const std::string& suite, int trials, std::uint64_t seed, unsigned jobs) {
    if (trials < 1) throw InvalidArgument("oracle suite: trials must be >= 1");
    OracleSuiteResult out;
    out.suite = suite;
    out.total = trials;
    std::vector<std::vector<VerificationReport>> per{std::size_t(trials)};
    std::vector<char> ok(std::size_t(trials), 0);
    if (suite == "1d") {
        auto tgrid = suite_tgrid(1.0);
        auto I = ProfileSpec::constant(1.0);
        parallel_for(std::size_t(trials), jobs, [&](std::size_t i) {
            auto f = random_grid_function(seed, i);
            auto a = check_oscillation(f, I, tgrid);
            auto b = check_polya_szego(f, tgrid);
            ok[i] = a.pass && b.pass;
            a.config["trial"] = b.config["trial"] = std::to_string(i);
            per[i] = {a, b};
        });
    } else if (suite == "2d") {
        auto tgrid = suite_tgrid(0.5);
        auto J = ProfileSpec::gaussian(1.0);
        parallel_for(std::size_t(trials), jobs, [&](std::size_t i) {
            std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(i), 3u};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> U(0.0, 1.0);
            double c[3][4];
            for (auto& b : c) b[0] = U(rng), b[1] = U(rng), b[2] = 0.1 + 0.3 * U(rng), b[3] = 2.0 * U(rng) - 1.0;
            auto f = GridFunction2D::sample(
                [&](double x, double y) {
                    double v = 0.0;
                    for (auto& b : c) v += b[3] * std::exp(-((x - b[0]) * (x - b[0]) + (y - b[1]) * (y - b[1])) / (b[2] * b[2]));
                    return v;
                },
                32);
            auto r = check_oscillation(f, J, tgrid);
            r.config["trial"] = std::to_string(i);
            ok[i] = r.pass;
            per[i] = {r};
        });
    } else if (suite == "norms") {
        parallel_for(std::size_t(trials), jobs, [&](std::size_t i) {
            std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(i), 4u};
            std::mt19937_64 rng(seq);
            auto space = random_space(rng);
            auto f = random_profile(seed, i);
            const std::size_t res = 100000;
            VerificationReport r;
            r.check = "norm_oracle";
            r.config["space"] = space.describe();
            r.config["trial"] = std::to_string(i);
            double a = ri_norm(space, f), b = riemann_norm_oracle(space, f, res);
            r.lhs = std::fabs(a - b) / std::max(std::fabs(b), 1e-300);
            r.rhs = std::max(1e-6, 10.0 / double(res));
            r.decide();
            ok[i] = r.pass;
            per[i] = {r};
        });
    } else {
        throw InvalidArgument("unknown oracle suite '" + suite + "' (expected 1d, 2d or norms)");
    }
    for (std::size_t i = 0; i < per.size(); ++i) {
        out.passed += ok[i] ? 1 : 0;
        for (auto& r : per[i]) out.reports.push_back(std::move(r));
    }
    return out;
}

}  // namespace dimsob
