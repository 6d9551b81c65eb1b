#include "dimsob/isoprofile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimsob/error.hpp"
#include "dimsob/numeric.hpp"

namespace dimsob {

namespace {

const double kLn2 = std::log(2.0);

double log_eval(const ProfileSpec& spec, double lnt, double ln1mt) {
    double lnm = std::min(lnt, ln1mt);
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, profile::PowerRn>) {
                double n = s.n;
                return std::log(n) + log_ball_volume(s.n) / n + (1.0 - 1.0 / n) * lnt;
            } else if constexpr (std::is_same_v<T, profile::Ball>) {
                double e = 1.0 - 1.0 / s.n;
                return log_ball_volume(s.n - 1) - log_ball_volume(s.n) + e * kLn2 + e * lnm;
            } else if constexpr (std::is_same_v<T, profile::Sphere>) {
                return kLn2 + log_sphere_area(s.n - 1) - log_sphere_area(s.n) + (1.0 - 1.0 / s.n) * lnm;
            } else if constexpr (std::is_same_v<T, profile::Manifold>) {
                return 0.5 * std::log(2.0 * s.k / kPi) + std::lgamma(0.5 * (s.n + 1)) - std::lgamma(0.5 * s.n) +
                       (1.0 - 1.0 / s.n) * lnm;
            } else if constexpr (std::is_same_v<T, profile::Gaussian>) {
                return std::log(s.c) + lnt + 0.5 * std::log(-lnt);
            } else if constexpr (std::is_same_v<T, profile::Tabulated>) {
                const auto& t = s.t;
                std::size_t m = t.size();
                std::size_t i = std::size_t(std::upper_bound(t.begin(), t.end(), std::exp(lnt)) - t.begin());
                if (i == 0) i = 1;
                if (i >= m) i = m - 1;
                double x0 = std::log(t[i - 1]), x1 = std::log(t[i]);
                double y0 = std::log(s.J[i - 1]), y1 = std::log(s.J[i]);
                return y0 + (y1 - y0) * (lnt - x0) / (x1 - x0);
            } else {
                return std::log(s.c);
            }
        },
        spec.v);
}

void check_monotone_ratio(const ProfileSpec& spec) {
    // t/J(t) non-decreasing on (0,1/2)
    double prev = -kInf;
    for (int i = 600; i >= 0; --i) {
        double t = 0.5 * std::pow(10.0, -0.02 * i);
        double v = std::log(t) - log_eval(spec, std::log(t), std::log1p(-t));
        if (v < prev - 1e-12 * std::max(1.0, std::fabs(prev)))
            throw InvalidArgument("profile: t/J(t) must be non-decreasing on (0,1/2)");
        prev = v;
    }
}

}  // namespace

ProfileSpec ProfileSpec::power_rn(int n) {
    if (n < 1) throw InvalidArgument("profile: n must be >= 1");
    return {profile::PowerRn{n}};
}
ProfileSpec ProfileSpec::ball(int n) {
    if (n < 1) throw InvalidArgument("profile: n must be >= 1");
    return {profile::Ball{n}};
}
ProfileSpec ProfileSpec::sphere(int n) {
    if (n < 1) throw InvalidArgument("profile: n must be >= 1");
    return {profile::Sphere{n}};
}
ProfileSpec ProfileSpec::manifold(int n, double k) {
    if (n < 1) throw InvalidArgument("profile: n must be >= 1");
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("profile: curvature must be positive");
    return {profile::Manifold{n, k}};
}
ProfileSpec ProfileSpec::gaussian(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("profile: Gaussian constant must be positive");
    return {profile::Gaussian{c}};
}
ProfileSpec ProfileSpec::tabulated(std::vector<double> t, std::vector<double> J) {
    if (t.size() < 2 || t.size() != J.size()) throw InvalidArgument("profile: tabulated grid needs >= 2 matching points");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0 && t[i] < 1.0) || !(J[i] > 0.0) || !std::isfinite(J[i]))
            throw InvalidArgument("profile: tabulated points need t in (0,1) and J > 0");
        if (i > 0 && !(t[i] > t[i - 1])) throw InvalidArgument("profile: tabulated t must increase strictly");
    }
    ProfileSpec s{profile::Tabulated{std::move(t), std::move(J)}};
    check_monotone_ratio(s);
    return s;
}
ProfileSpec ProfileSpec::constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("profile: constant must be positive");
    return {profile::Constant{c}};
}

std::string ProfileSpec::describe() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, profile::PowerRn>)
                return "power_rn:" + std::to_string(s.n);
            else if constexpr (std::is_same_v<T, profile::Ball>)
                return "ball:" + std::to_string(s.n);
            else if constexpr (std::is_same_v<T, profile::Sphere>)
                return "sphere:" + std::to_string(s.n);
            else if constexpr (std::is_same_v<T, profile::Manifold>)
                return "manifold:" + std::to_string(s.n) + "," + std::to_string(s.k);
            else if constexpr (std::is_same_v<T, profile::Gaussian>)
                return "gaussian:" + std::to_string(s.c);
            else if constexpr (std::is_same_v<T, profile::Tabulated>)
                return "tabulated:" + std::to_string(s.t.size());
            else
                return "constant:" + std::to_string(s.c);
        },
        v);
}

double ProfileSpec::domain_end() const { return std::holds_alternative<profile::Gaussian>(v) ? 0.5 : 1.0; }

bool ProfileSpec::power_type(double& a) const {
    if (auto* s = std::get_if<profile::PowerRn>(&v)) a = 1.0 / s->n;
    else if (auto* s = std::get_if<profile::Ball>(&v)) a = 1.0 / s->n;
    else if (auto* s = std::get_if<profile::Sphere>(&v)) a = 1.0 / s->n;
    else if (auto* s = std::get_if<profile::Manifold>(&v)) a = 1.0 / s->n;
    else return false;
    return true;
}

double ProfileSpec::log_eval_y(double y) const {
    double y2 = y * y;
    return log_eval(*this, -y2, std::log(-std::expm1(-y2)));
}

double profile_eval(const ProfileSpec& spec, double t) {
    double end = spec.domain_end();
    if (!(t > 0.0) || t > end || (end == 1.0 && t >= 1.0))
        throw InvalidArgument("profile: t outside the domain of " + spec.describe());
    return std::exp(log_eval(spec, std::log(t), std::log1p(-t)));
}

WeightFunction WeightFunction::log_half() { return WeightFunction{}; }

WeightFunction WeightFunction::custom(std::function<double(double)> G, double sing0, double sing1) {
    if (!G) throw InvalidArgument("weight: evaluator required");
    if (!(sing1 < 1.0)) throw InvalidArgument("weight: singularity at t = 1 must be integrable (exponent < 1)");
    WeightFunction w;
    w.kind = Kind::Custom;
    w.G = std::move(G);
    w.sing0 = sing0;
    w.sing1 = sing1;
    double lo = kInf, hi = 0.0;
    for (int j = 2; j <= 30; ++j) {
        double t = std::pow(10.0, -j);
        double g = w.G(t);
        if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("weight: G must be positive and finite on (0,1)");
        double v = g * t * std::pow(std::log(1.0 / t), sing0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi > 1e3 * lo) throw InvalidArgument("weight: declared behaviour at t = 0 does not match the evaluator");
    lo = kInf;
    hi = 0.0;
    for (int j = 2; j <= 12; ++j) {
        double s = std::pow(10.0, -j);
        double g = w.G(1.0 - s);
        if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("weight: G must be positive and finite on (0,1)");
        double v = g * std::pow(s, sing1);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi > 1e3 * std::max(lo, 1e-300) && hi > 1e3) throw InvalidArgument("weight: declared behaviour at t = 1 does not match the evaluator");
    return w;
}

double WeightFunction::operator()(double t) const {
    if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("weight: t must lie in (0,1)");
    if (kind == Kind::LogHalf) return 1.0 / (t * std::sqrt(std::log(1.0 / t)));
    return G(t);
}

double WeightFunction::density_y(double y) const {
    if (kind == Kind::LogHalf) return 2.0;
    double t = std::exp(-y * y);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return G(t) * t * 2.0 * y;
}

double WeightFunction::integral_y(double y0, double y1) const {
    if (kind == Kind::LogHalf) return 2.0 * (y1 - y0);
    auto q = integrate([this](double y) { return density_y(y); }, y0, y1, 1e-11);
    return q.value;
}

namespace {

int dimension_of(const ProfileSpec& spec) {
    double a = 0.0;
    if (spec.power_type(a)) return int(std::lround(1.0 / a));
    return 1;
}

}  // namespace

double transference_integral(const ProfileSpec& spec, const WeightFunction& G, double r, const TransferenceOptions& opts) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("transference: r must lie in (0,1]");
    if (r > spec.domain_end()) throw InvalidArgument("transference: interval exceeds the domain of " + spec.describe());
    const double yr = r == 1.0 ? 0.0 : std::sqrt(std::log(1.0 / r));
    auto F = [&](double y) {
        if (y <= 0.0) return 0.0;
        double le = -y * y - spec.log_eval_y(y);
        if (le < -745.0) return 0.0;
        return std::exp(le) * G.density_y(y);
    };

    // ratio test on dyadic t-shells (2^{-m-1}, 2^{-m}] near t = 0
    const int M = std::max(opts.shells, 16 * dimension_of(spec));
    std::vector<double> S;
    for (int m = M - 10; m <= M; ++m) S.push_back(integrate(F, std::sqrt(m * kLn2), std::sqrt((m + 1) * kLn2), 1e-12).value);
    bool divergent0 = true;
    for (int i = 0; i < 10; ++i) {
        int m = M - 10 + i;
        if (!(S[i + 1] > 0.0)) {
            divergent0 = false;
            break;
        }
        double R = m * (S[i] / S[i + 1] - 1.0);
        if (R > 1.05) {
            divergent0 = false;
            break;
        }
    }
    if (divergent0) return kInf;

    // geometric y-shells near t = 1
    if (yr == 0.0) {
        const double y0 = 0.5;
        std::vector<double> T;
        for (int m = 0; m < 60; ++m) T.push_back(integrate(F, y0 * std::ldexp(1.0, -m - 1), y0 * std::ldexp(1.0, -m), 1e-12).value);
        int run = 0;
        for (int m = 50; m + 1 < 60; ++m) {
            if (T[m] > 0.0 && T[m + 1] >= (1.0 - 1e-3) * T[m])
                ++run;
            else
                run = 0;
        }
        if (run >= 9) return kInf;
    }

    std::vector<double> ys{yr};
    auto add = [&](double y) {
        if (y > yr) ys.push_back(y);
    };
    add(std::sqrt(kLn2));
    if (auto* tab = std::get_if<profile::Tabulated>(&spec.v))
        for (double t : tab->t) add(std::sqrt(std::log(1.0 / t)));
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    ys.push_back(ys.back() + 1.0);
    auto body = integrate_panels(F, ys, 1e-12, 15);
    auto tail = integrate(F, ys.back(), kInf, 1e-12, 15);
    QuadResult total{body.value + tail.value, body.error + tail.error};
    if (!std::isfinite(total.value) || total.error > opts.rel_tol * std::fabs(total.value) + 1e-300)
        throw ConvergenceError("transference integral inconclusive for " + spec.describe() +
                               ": neither converged nor detected divergent");
    return total.value;
}

GeometryKind parse_geometry_kind(const std::string& s) {
    if (s == "rn") return GeometryKind::rn;
    if (s == "ball") return GeometryKind::ball;
    if (s == "sphere") return GeometryKind::sphere;
    if (s == "manifold") return GeometryKind::manifold;
    throw InvalidArgument("unknown geometry kind '" + s + "'");
}

std::string to_string(GeometryKind k) {
    switch (k) {
        case GeometryKind::rn: return "rn";
        case GeometryKind::ball: return "ball";
        case GeometryKind::sphere: return "sphere";
        case GeometryKind::manifold: return "manifold";
    }
    return "";
}

double geometry_constant(GeometryKind kind, int n, double curvature) {
    const double dn = n;
    switch (kind) {
        case GeometryKind::rn:
            if (n < 1) throw InvalidArgument("geometry constant: n must be >= 1");
            return std::exp(std::lgamma(1.0 + 0.5 * dn) / dn) / std::sqrt(dn);
        case GeometryKind::ball:
            if (n < 1) throw InvalidArgument("geometry constant: n must be >= 1");
            return std::sqrt(kPi * dn) * std::exp(log_ball_volume(n) - log_ball_volume(n - 1) - (1.0 - 1.0 / dn) * kLn2);
        case GeometryKind::sphere:
            if (n < 2) throw InvalidArgument("geometry constant: n must be >= 2 for the sphere");
            return 0.5 * std::sqrt(kPi * dn) * std::exp(log_sphere_area(n) - log_sphere_area(n - 1));
        case GeometryKind::manifold:
            if (n < 2) throw InvalidArgument("geometry constant: n must be >= 2 for a manifold");
            if (!(curvature > 0.0)) throw InvalidArgument("geometry constant: curvature must be positive");
            return kPi / std::sqrt(2.0 * curvature) * std::sqrt(dn) *
                   std::exp(std::lgamma(0.5 * dn) - std::lgamma(0.5 * (dn + 1.0)));
    }
    return 0.0;
}

double geometry_limit(GeometryKind kind, double curvature) {
    switch (kind) {
        case GeometryKind::rn: return 1.0 / std::sqrt(2.0 * std::exp(1.0));
        case GeometryKind::ball: return kPi * std::sqrt(2.0) / 2.0;
        case GeometryKind::sphere: return kPi / std::sqrt(2.0);
        case GeometryKind::manifold:
            if (!(curvature > 0.0)) throw InvalidArgument("geometry limit: curvature must be positive");
            return kPi / std::sqrt(curvature);
    }
    return 0.0;
}

double sphere_printed_constant(int n) {
    if (n < 2) throw InvalidArgument("geometry constant: n must be >= 2 for the sphere");
    return std::sqrt(kPi * n) * std::exp(log_sphere_area(n) - log_sphere_area(n - 1));
}

double sphere_printed_limit() { return std::sqrt(2.0) * kPi; }

double sphere_item_printed_constant(int n) {
    if (n < 2) throw InvalidArgument("geometry constant: n must be >= 2 for the sphere");
    return std::sqrt(kPi * n) * std::exp(log_sphere_area(n - 1) - log_sphere_area(n));
}

GaussianTypeResult gaussian_type_check(const ProfileSpec& spec, const WeightFunction& G, double r) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("gaussian type check: r must lie in (0,1]");
    if (r > spec.domain_end()) throw InvalidArgument("gaussian type check: r exceeds the profile domain");
    const double yr = r == 1.0 ? 0.0 : std::sqrt(std::log(1.0 / r));
    const double ymax = 26.0;
    const int grid = 4000;
    std::vector<double> ys(grid + 1), inner(grid + 1, 0.0);
    for (int i = 0; i <= grid; ++i) ys[i] = yr + (ymax - yr) * i / grid;
    for (int i = 1; i <= grid; ++i) inner[i] = inner[i - 1] + G.integral_y(ys[i - 1], ys[i]);
    auto value = [&](double y, double in) {
        if (y <= 0.0) return 0.0;
        return std::exp(-y * y - spec.log_eval_y(y)) * in;
    };
    int best = 0;
    double bestv = 0.0;
    for (int i = 1; i <= grid; ++i) {
        double v = value(ys[i], inner[i]);
        if (v > bestv) {
            bestv = v;
            best = i;
        }
    }
    double argy = ys[best];
    if (best > 0 && best < grid) {
        auto f = [&](double y) { return value(y, inner[best - 1] + G.integral_y(ys[best - 1], y)); };
        auto m = maximize_on_grid(f, ys[best - 1], ys[best + 1], 8, 60);
        if (m.value > bestv) {
            bestv = m.value;
            argy = m.x;
        }
    }
    return {bestv, std::exp(-argy * argy)};
}

IsoHardyEvaluator::IsoHardyEvaluator(ProfileSpec spec, StepProfile profile) : spec_(std::move(spec)), f_(std::move(profile)) {
    if (!f_.nonnegative()) throw InvalidArgument("isoperimetric Hardy operator: profile must be non-negative");
    double a = 0.0;
    if (spec_.power_type(a)) a_ = a;
}

double IsoHardyEvaluator::operator()(double t) const {
    if (!(t > 0.0 && t < 0.5)) throw InvalidArgument("isoperimetric Hardy operator: t must lie in (0,1/2)");
    CompensatedSum acc;
    std::size_t j = f_.step_index(t);
    if (a_ > 0.0) {
        for (; j < f_.size(); ++j) {
            double lo = std::max(t, f_.left(j)), hi = std::min(0.5, f_.right(j));
            if (hi > lo && f_.value(j) != 0.0) acc += f_.value(j) * power_difference(lo, hi, a_);
            if (f_.right(j) >= 0.5) break;
        }
        return acc.value() * std::pow(t, -a_);
    }
    if (std::holds_alternative<profile::Constant>(spec_.v)) return (f_.integral(0.5) - f_.integral(t)) / t;
    // int f(z)/J(z) dz in u = ln z
    auto inv = [&](double u) {
        double z = std::exp(u);
        return z / profile_eval(spec_, z);
    };
    for (; j < f_.size(); ++j) {
        double lo = std::max(t, f_.left(j)), hi = std::min(0.5, f_.right(j));
        if (hi > lo && f_.value(j) != 0.0) acc += f_.value(j) * integrate(inv, std::log(lo), std::log(hi), 1e-12).value;
        if (f_.right(j) >= 0.5) break;
    }
    return acc.value() * profile_eval(spec_, t) / t;
}

IsoHardyEvaluator iso_hardy_QJ(const ProfileSpec& spec, const StepProfile& profile) { return IsoHardyEvaluator(spec, profile); }

double gaussian_near_zero_ratio(int n) {
    auto spec = ProfileSpec::ball(n);
    double best = 0.0;
    double y0 = std::sqrt(std::log(4.0));
    for (int i = 1; i <= 20000; ++i) {
        double y = y0 + (26.0 - y0) * i / 20000.0;
        best = std::max(best, std::exp(-y * y + std::log(y) - spec.log_eval_y(y)));
    }
    return best;
}

}  // namespace dimsob
