#include "dimsob/rispace.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dimsob/error.hpp"

namespace dimsob {

namespace {

void require_nonnegative(const StepProfile& f) {
    if (!f.nonnegative()) throw InvalidArgument("norm: profile must be non-negative");
}

double lorentz_weight(double a, double b, double e) {
    // b^e - a^e for 0 <= a < b
    if (a <= 0.0) return std::pow(b, e);
    return e * power_difference(a, b, e);
}

double orlicz_norm(const YoungFn& N, const StepProfile& f) {
    double sup = f.sup();
    if (sup <= 0.0) return 0.0;
    auto modular = [&](double lambda) {
        CompensatedSum s;
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (f.value(j) <= 0.0) break;
            s += N(f.value(j) / lambda) * f.width(j);
        }
        return s.value();
    };
    double hi = sup / N.inverse(1.0);
    double lo = hi;
    int guard = 0;
    while (modular(lo) <= 1.0) {
        lo *= 0.5;
        if (++guard > 2000) throw ConvergenceError("Orlicz norm: could not bracket the Luxemburg norm");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (modular(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-14 * hi) return hi;
    }
    throw ConvergenceError("Orlicz norm: bisection did not converge in 200 iterations");
}

bool closed_form_power_index(const SpaceSpec& s, double& alpha) {
    if (auto* l = std::get_if<space::Lp>(&s.v)) {
        alpha = 1.0 / l->p;
        return true;
    }
    if (auto* l = std::get_if<space::LorentzPQ>(&s.v)) {
        alpha = 1.0 / l->p;
        return true;
    }
    if (auto* l = std::get_if<space::LorentzLambda>(&s.v)) {
        alpha = l->phi.alpha;
        return l->phi.beta == 0.0;
    }
    if (auto* l = std::get_if<space::Marcinkiewicz>(&s.v)) {
        alpha = l->phi.alpha;
        return l->phi.beta == 0.0;
    }
    if (auto* l = std::get_if<space::Orlicz>(&s.v)) {
        if (l->N.kind == YoungFn::Kind::power) {
            alpha = 1.0 / l->N.p;
            return true;
        }
    }
    return false;
}

// h for Lambda(phi) and M(phi), phi = t^a (1+ln 1/t)^b: supremum over indicators, which is exact for both.
double concave_dilation(const ConcaveFn& phi, double r) {
    double h = std::pow(r, phi.alpha);
    if (r < 1.0 && phi.beta > 0.0) h *= std::pow(1.0 + std::log(1.0 / r), phi.beta);
    if (r > 1.0 && phi.beta < 0.0) h *= std::pow(1.0 + std::log(r), -phi.beta);
    return h;
}

// index a such that the certified dilation bound is O(r^a polylog) as r -> 0
double certified_lower_index(const SpaceSpec& s) {
    double a = 0.0;
    if (closed_form_power_index(s, a)) return a;
    if (auto* l = std::get_if<space::LorentzLambda>(&s.v)) return l->phi.alpha;
    if (auto* l = std::get_if<space::Marcinkiewicz>(&s.v)) return l->phi.alpha;
    if (auto* l = std::get_if<space::LogRefined>(&s.v)) {
        if (l->variant == WeightVariant::ln && l->k >= 3) return 0.0;
        return certified_lower_index(*l->base);
    }
    return 0.0;
}

double certified_upper_index(const SpaceSpec& s) {
    double a = 0.0;
    if (closed_form_power_index(s, a)) return a;
    if (auto* l = std::get_if<space::LorentzLambda>(&s.v)) return l->phi.alpha;
    if (auto* l = std::get_if<space::Marcinkiewicz>(&s.v)) return l->phi.alpha;
    if (auto* l = std::get_if<space::LogRefined>(&s.v)) return certified_upper_index(*l->base);
    return 1.0;
}

double log_refined_dilation_factor(int k, WeightVariant variant, double r) {
    double ell = std::log(1.0 / r);
    double half = 0.5 * k;
    if (variant == WeightVariant::ln) {
        if (k >= 3) return kInf;
        return 1.0 + (2.0 / k) * std::pow(ell, half) / std::tgamma(half);
    }
    double ck = std::exp(1.0) * boost::math::tgamma(half, 1.0);
    double sk = k <= 2 ? 1.0 : std::pow(1.0 + ell, half - 1.0);
    return sk + (2.0 / k) * (std::pow(1.0 + ell, half) - 1.0) / ck;
}

}  // namespace

double ri_norm(const SpaceSpec& space, const StepProfile& f) {
    require_nonnegative(f);
    if (f.sup() == 0.0) return 0.0;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, space::Lp>) {
                double M = f.sup();
                CompensatedSum acc;
                for (std::size_t j = 0; j < f.size() && f.value(j) > 0.0; ++j) acc += pow_fast(f.value(j) / M, s.p) * f.width(j);
                return M * std::pow(acc.value(), 1.0 / s.p);
            } else if constexpr (std::is_same_v<T, space::LorentzPQ>) {
                if (std::isinf(s.q)) {
                    double m = 0.0;
                    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, f.value(j) * std::pow(f.right(j), 1.0 / s.p));
                    return m;
                }
                double M = f.sup(), e = s.q / s.p;
                CompensatedSum acc;
                for (std::size_t j = 0; j < f.size() && f.value(j) > 0.0; ++j)
                    acc += pow_fast(f.value(j) / M, s.q) * lorentz_weight(f.left(j), f.right(j), e);
                return M * std::pow(acc.value(), 1.0 / s.q);
            } else if constexpr (std::is_same_v<T, space::LorentzLambda>) {
                CompensatedSum acc;
                for (std::size_t j = 0; j < f.size() && f.value(j) > 0.0; ++j)
                    acc += f.value(j) * (s.phi(f.right(j)) - s.phi(f.left(j)));
                return acc.value();
            } else if constexpr (std::is_same_v<T, space::Marcinkiewicz>) {
                double m = 0.0;
                for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, f.value(j) * s.phi(f.right(j)));
                return m;
            } else if constexpr (std::is_same_v<T, space::Orlicz>) {
                return orlicz_norm(s.N, f);
            } else {
                return xklog_norm(*s.base, s.k, f, s.variant);
            }
        },
        space.v);
}

double fundamental_function(const SpaceSpec& space, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("fundamental function: t must lie in (0,1]");
    if (auto* s = std::get_if<space::Lp>(&space.v)) return std::pow(t, 1.0 / s->p);
    if (auto* s = std::get_if<space::LorentzPQ>(&space.v)) return std::pow(t, 1.0 / s->p);
    if (auto* s = std::get_if<space::LorentzLambda>(&space.v)) return s->phi(t);
    if (auto* s = std::get_if<space::Marcinkiewicz>(&space.v)) return s->phi(t);
    if (auto* s = std::get_if<space::Orlicz>(&space.v)) return 1.0 / s->N.inverse(1.0 / t);
    return ri_norm(space, StepProfile::indicator(t));
}

TruncatedNorm::TruncatedNorm(SpaceSpec space, StepProfile profile) : space_(std::move(space)), profile_(std::move(profile)) {
    require_nonnegative(profile_);
    if (auto* s = std::get_if<space::Lp>(&space_.v)) {
        p_ = s->p;
        prefix_pow_.resize(profile_.size());
        CompensatedSum acc;
        for (std::size_t j = 0; j < profile_.size(); ++j) {
            acc += pow_fast(profile_.value(j), p_) * profile_.width(j);
            prefix_pow_[j] = acc.value();
        }
    }
}

double TruncatedNorm::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (p_ > 0.0) {
        if (t >= 1.0) return std::pow(prefix_pow_.back(), 1.0 / p_);
        std::size_t j = profile_.step_index(t);
        double before = j == 0 ? 0.0 : prefix_pow_[j - 1];
        return std::pow(before + pow_fast(profile_.value(j), p_) * (t - profile_.left(j)), 1.0 / p_);
    }
    if (t >= 1.0) return ri_norm(space_, profile_);
    return ri_norm(space_, restrict(profile_, t, RestrictMode::truncate));
}

HardyEvaluator::HardyEvaluator(StepProfile profile, HardyMode mode, double a) : profile_(std::move(profile)), mode_(mode), a_(a) {
    require_nonnegative(profile_);
    if (mode == HardyMode::Q) {
        if (!(a >= 0.0 && a < 1.0)) throw InvalidArgument("Hardy operator Q_a: a must lie in [0,1)");
        std::size_t m = profile_.size();
        suffix_.assign(m, 0.0);
        CompensatedSum acc;
        for (std::size_t j = m; j-- > 0;) {
            suffix_[j] = acc.value();
            double v = profile_.value(j);
            if (v != 0.0 && j > 0) acc += v * power_difference(profile_.left(j), profile_.right(j), a);
        }
    }
}

double HardyEvaluator::operator()(double t) const {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("Hardy operator: t must lie in (0,1]");
    if (mode_ == HardyMode::P) return profile_.integral(t) / t;
    std::size_t j = profile_.step_index(t);
    double inside = profile_.value(j) == 0.0 ? 0.0 : profile_.value(j) * power_difference(t, profile_.right(j), a_);
    double total = inside + suffix_[j];
    return a_ == 0.0 ? total : total * std::pow(t, -a_);
}

HardyEvaluator hardy_transform(const StepProfile& profile, HardyMode mode, double a) { return HardyEvaluator(profile, mode, a); }

StepProfile discretize_decreasing(const std::function<double(double)>& g, const std::vector<double>& breaks) {
    std::vector<double> b, v;
    double prev = kInf;
    for (double r : breaks) {
        double val = std::min(prev, g(r));
        b.push_back(r);
        v.push_back(val);
        prev = val;
    }
    return StepProfile::make(std::move(b), std::move(v));
}

StepProfile dilation(const StepProfile& profile, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("dilation: r must be positive");
    require_nonnegative(profile);
    std::vector<double> b, v;
    for (std::size_t j = 0; j < profile.size(); ++j) {
        double nb = r * profile.right(j);
        if (nb >= 1.0) {
            b.push_back(1.0);
            v.push_back(profile.value(j));
            return StepProfile::make(std::move(b), std::move(v));
        }
        if (!b.empty() && !(nb > b.back())) continue;
        b.push_back(nb);
        v.push_back(profile.value(j));
    }
    b.push_back(1.0);
    v.push_back(0.0);
    return StepProfile::make(std::move(b), std::move(v));
}

const std::vector<StepProfile>& dilation_test_profiles() {
    static const std::vector<StepProfile> family = [] {
        std::vector<StepProfile> out;
        for (int i = 0; i < 100; ++i) out.push_back(StepProfile::indicator(std::pow(10.0, -200.0 * i / 99.0)));
        const int J = 60;
        std::vector<double> b(J + 1);
        for (int j = 0; j <= J; ++j) b[j] = std::ldexp(1.0, j - J);  // 2^-60 .. 1
        for (int i = 0; i < 50; ++i) {
            double alpha = (i + 1) / 51.0;
            std::vector<double> v(J + 1);
            for (int j = 0; j <= J; ++j) v[j] = std::pow(j == 0 ? std::ldexp(1.0, -J - 1) : b[j - 1], -alpha);
            out.push_back(StepProfile::make(b, v));
        }
        for (int i = 0; i < 50; ++i) {
            double beta = 0.1 * (i + 1);
            std::vector<double> v(J + 1);
            for (int j = 0; j <= J; ++j) {
                double s = j == 0 ? std::ldexp(1.0, -J - 1) : b[j - 1];
                v[j] = std::pow(1.0 + std::log(1.0 / s), beta);
            }
            out.push_back(StepProfile::make(b, v));
        }
        return out;
    }();
    return family;
}

namespace {

std::vector<double> numeric_dilation_sup(const SpaceSpec& space, const std::vector<double>& rs) {
    const auto& fam = dilation_test_profiles();
    std::vector<double> norms(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) norms[i] = ri_norm(space, fam[i]);
    std::vector<double> out;
    for (double r : rs) {
        double best = 0.0;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!(norms[i] > 0.0) || !std::isfinite(norms[i])) continue;
            best = std::max(best, ri_norm(space, dilation(fam[i], r)) / norms[i]);
        }
        out.push_back(std::min(best, std::max(1.0, r)));
    }
    return out;
}

}  // namespace

DilationNorm dilation_norm(const SpaceSpec& space, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("dilation norm: r must be positive");
    double cap = std::max(1.0, r);
    double alpha = 0.0;
    if (closed_form_power_index(space, alpha)) return {std::min(std::pow(r, alpha), cap), false};
    if (auto* s = std::get_if<space::LorentzLambda>(&space.v)) return {std::min(concave_dilation(s->phi, r), cap), false};
    if (auto* s = std::get_if<space::Marcinkiewicz>(&space.v)) return {std::min(concave_dilation(s->phi, r), cap), false};
    return {numeric_dilation_sup(space, {r}).front(), true};
}

double dilation_norm_upper(const SpaceSpec& space, double r) {
    if (!(r > 0.0)) throw InvalidArgument("dilation norm: r must be positive");
    double cap = std::max(1.0, r);
    auto d = std::get_if<space::LogRefined>(&space.v);
    if (!d) {
        auto h = dilation_norm(space, r);
        return h.estimated ? cap : h.value;
    }
    double base = dilation_norm_upper(*d->base, r);
    if (r >= 1.0) return std::min(base, cap);
    return std::min(base * log_refined_dilation_factor(d->k, d->variant, r), cap);
}

namespace {

// least squares fit ln h = a ln r + b ln(1 + |ln r|) + c, returns a
double fit_index(const std::vector<double>& lr, const std::vector<double>& lh) {
    std::array<std::array<double, 4>, 3> m{};
    for (std::size_t i = 0; i < lr.size(); ++i) {
        double x[3] = {lr[i], std::log1p(std::fabs(lr[i])), 1.0};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) m[a][b] += x[a] * x[b];
            m[a][3] += x[a] * lh[i];
        }
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        std::swap(m[c], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return m[0][3] / m[0][0];
}

double numeric_index(const SpaceSpec& space, int sign) {
    std::vector<double> rs;
    for (int j = 1; j <= 20; ++j) rs.push_back(std::ldexp(1.0, sign * j));
    auto h = numeric_dilation_sup(space, rs);
    std::vector<double> lr, lh;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (!(h[i] > 0.0)) throw ConvergenceError("Boyd index: dilation estimate vanished");
        lr.push_back(std::log(rs[i]));
        lh.push_back(std::log(h[i]));
    }
    double full = fit_index(lr, lh);
    std::vector<double> lr2(lr.begin() + 9, lr.end()), lh2(lh.begin() + 9, lh.end());
    double deep = fit_index(lr2, lh2);
    if (std::fabs(full - deep) > 0.05)
        throw ConvergenceError("Boyd index estimate did not settle (spread " + std::to_string(std::fabs(full - deep)) + ")");
    return full;
}

}  // namespace

BoydIndices boyd_indices(const SpaceSpec& space) {
    double alpha = 0.0;
    if (closed_form_power_index(space, alpha)) return {alpha, alpha, false};
    if (auto* s = std::get_if<space::LorentzLambda>(&space.v)) return {s->phi.alpha, s->phi.alpha, false};
    if (auto* s = std::get_if<space::Marcinkiewicz>(&space.v)) return {s->phi.alpha, s->phi.alpha, false};
    double lo = numeric_index(space, -1), hi = numeric_index(space, +1);
    if (lo > hi) {
        if (lo - hi > 0.05) throw ConvergenceError("Boyd index estimates cross (lower > upper)");
        lo = hi = 0.5 * (lo + hi);
    }
    return {lo, hi, true};
}

double qa_norm_bound(const SpaceSpec& space, double a) {
    if (!(a >= 0.0 && a < 1.0)) throw InvalidArgument("Q_a bound: a must lie in [0,1)");
    double alpha = certified_lower_index(space);
    if (alpha <= a) return kInf;
    double cf = 0.0;
    if (closed_form_power_index(space, cf)) return 1.0 / (cf - a);
    // u = ln s
    auto f = [&](double u) { return u > 700.0 ? 0.0 : dilation_norm_upper(space, std::exp(-u)) * std::exp(a * u); };
    auto q = integrate(f, 0.0, kInf, 1e-11);
    require_accuracy(q, 1e-8, "Q_a bound");
    return q.value;
}

double p_norm_bound(const SpaceSpec& space) {
    double beta = certified_upper_index(space);
    if (beta >= 1.0) return kInf;
    double cf = 0.0;
    if (closed_form_power_index(space, cf)) return 1.0 / (1.0 - cf);
    auto f = [&](double u) { return u > 700.0 ? 0.0 : dilation_norm_upper(space, std::exp(u)) * std::exp(-u); };
    auto q = integrate(f, 0.0, kInf, 1e-11);
    require_accuracy(q, 1e-8, "P bound");
    return q.value;
}

double operator_ratio(const SpaceSpec& space, HardyMode mode, double a, const StepProfile& f) {
    double nf = ri_norm(space, f);
    if (!(nf > 0.0)) return 0.0;
    auto T = hardy_transform(f, mode, a);
    std::vector<double> breaks;
    for (int i = 64 * 16; i >= 0; --i) breaks.push_back(std::exp2(-i / 16.0));
    for (double b : f.breakpoints())
        if (b > breaks.front()) breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto g = discretize_decreasing([&](double t) { return T(t); }, breaks);
    return ri_norm(space, g) / nf;
}

OperatorNormEstimate operator_norm(const SpaceSpec& space, HardyMode mode, double a) {
    OperatorNormEstimate est;
    const auto& fam = dilation_test_profiles();
    for (const auto& f : fam) {
        double r = operator_ratio(space, mode, a, f);
        if (r > est.lower) {
            est.lower = r;
            est.witness = f;
        }
    }
    est.upper = mode == HardyMode::P ? p_norm_bound(space) : qa_norm_bound(space, a);
    if (est.upper < est.lower) est.upper = est.lower;
    return est;
}

double xklog_norm(const SpaceSpec& base, int k, const StepProfile& profile, WeightVariant variant) {
    if (k < 1) throw InvalidArgument("log-refined norm: k must be positive");
    require_nonnegative(profile);
    if (profile.sup() == 0.0) return 0.0;
    TruncatedNorm N(base, profile);
    // t = exp(-y^2): dt / (t w^{1-k/2}) becomes density(y) dy
    auto density = [k, variant](double y) {
        if (variant == WeightVariant::ln) return 2.0 * (k == 1 ? 1.0 : std::pow(y, k - 1));
        return 2.0 * y * std::pow(1.0 + y * y, 0.5 * k - 1.0);
    };
    auto f = [&](double y) { return N(std::exp(-y * y)) * density(y); };
    std::vector<double> ys{0.0};
    const auto& b = profile.breakpoints();
    for (std::size_t j = b.size(); j-- > 0;)
        if (b[j] < 1.0) ys.push_back(std::sqrt(std::log(1.0 / b[j])));
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto q = integrate_panels(f, ys, 1e-11);
    auto tail = integrate(f, ys.back(), kInf, 1e-11);
    QuadResult total{q.value + tail.value, q.error + tail.error};
    require_accuracy(total, 1e-8, "log-refined norm", 1e-15 * profile.sup());
    return total.value;
}

double small_lebesgue_norm(double q, const StepProfile& profile) {
    if (!(q > 1.0)) throw InvalidArgument("small Lebesgue norm: q must exceed 1");
    return xklog_norm(SpaceSpec::lp(q), 1, profile, WeightVariant::ln);
}

double log_ratio_sup_numeric(int k, double r) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("log ratio: r must lie in (0,1)");
    double ell = std::log(1.0 / r), e = 1.0 - 0.5 * k;
    auto F = [&](double L) { return std::pow((1.0 + L) / (1.0 + L + ell), e); };
    double best = 0.0;
    // L = ln(1/u) over (0, inf); sample log-uniformly from 1e-15 to 1e15
    for (int i = 0; i <= 6000; ++i) best = std::max(best, F(std::pow(10.0, -15.0 + 30.0 * i / 6000.0)));
    return best;
}

double log_ratio_sup_closed(int k, double r) {
    if (k <= 2) return 1.0;
    return std::pow(1.0 + std::log(1.0 / r), 0.5 * k - 1.0);
}

}  // namespace dimsob
