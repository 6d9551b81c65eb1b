#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "dimsob/error.hpp"
#include "dimsob/rispace.hpp"

namespace dimsob {

namespace {

std::string num(double x) {
    if (std::isinf(x)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double parse_number(const std::string& s) {
    std::string t = s;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "inf" || t == "infinity") return kInf;
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("space spec: bad number '" + s + "'");
    }
    if (pos != t.size()) throw InvalidArgument("space spec: bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// "pow:A" or "powlog:A,B"
ConcaveFn parse_concave(const std::string& s) {
    auto c = s.find(':');
    if (c == std::string::npos) throw InvalidArgument("space spec: expected pow:A or powlog:A,B, got '" + s + "'");
    std::string head = s.substr(0, c);
    auto args = split(s.substr(c + 1), ',');
    if (head == "pow" && args.size() == 1) return ConcaveFn::power(parse_number(args[0]));
    if (head == "powlog" && args.size() == 2) return ConcaveFn::power_log(parse_number(args[0]), parse_number(args[1]));
    throw InvalidArgument("space spec: unknown concave function '" + s + "'");
}

YoungFn parse_young(const std::string& s) {
    if (s == "exp2") return YoungFn::exp2();
    if (s == "xlogx") return YoungFn::xlogx();
    auto c = s.find(':');
    if (c != std::string::npos) {
        std::string head = s.substr(0, c);
        auto args = split(s.substr(c + 1), ',');
        if (head == "pow" && args.size() == 1) return YoungFn::power(parse_number(args[0]));
        if (head == "llog" && args.size() == 2) return YoungFn::llog(parse_number(args[0]), parse_number(args[1]));
    }
    throw InvalidArgument("space spec: unknown Young function '" + s + "'");
}

}  // namespace

ConcaveFn ConcaveFn::power(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("concave function: power exponent must lie in (0,1]");
    return {alpha, 0.0};
}

ConcaveFn ConcaveFn::power_log(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha <= 1.0) || !std::isfinite(beta))
        throw InvalidArgument("concave function: exponent must lie in (0,1]");
    ConcaveFn f{alpha, beta};
    if (beta == 0.0) return f;
    if (alpha == 1.0) throw InvalidArgument("concave function: t (1+ln 1/t)^b is concave only for b = 0");
    // monotone and concave on a log grid down to 1e-300
    double prev_t = 0.0, prev_f = 0.0, prev_slope = kInf;
    for (int i = 3000; i >= 0; --i) {
        double t = std::pow(10.0, -0.1 * i);
        double v = f(t);
        double slope = (v - prev_f) / (t - prev_t);
        if (slope < -1e-12 * std::fabs(prev_slope) || slope > prev_slope * (1.0 + 1e-9))
            throw InvalidArgument("concave function: phi is not non-decreasing and concave");
        prev_t = t;
        prev_f = v;
        prev_slope = slope;
    }
    return f;
}

double ConcaveFn::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) t = 1.0;
    double v = std::pow(t, alpha);
    if (beta != 0.0) v *= std::pow(1.0 + std::log(1.0 / t), beta);
    return v;
}

std::string ConcaveFn::describe() const {
    if (beta == 0.0) return "pow:" + num(alpha);
    return "powlog:" + num(alpha) + "," + num(beta);
}

YoungFn YoungFn::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("Young function: pow exponent must be >= 1");
    return {Kind::power, p, 0.0};
}
YoungFn YoungFn::exp2() { return {Kind::exp2, 2.0, 0.0}; }
YoungFn YoungFn::xlogx() { return {Kind::xlogx, 1.0, 0.0}; }
YoungFn YoungFn::llog(double q, double a) {
    if (!(q >= 1.0) || !(a >= 0.0) || !std::isfinite(q) || !std::isfinite(a))
        throw InvalidArgument("Young function: llog needs Q >= 1, A >= 0");
    YoungFn f{Kind::llog, q, a};
    // convexity on a grid
    double h = 1e-3, prev = -kInf;
    for (int i = 0; i < 20000; ++i) {
        double x = i * h;
        double slope = (f(x + h) - f(x)) / h;
        if (slope < prev - 1e-9 * std::fabs(prev)) throw InvalidArgument("Young function: llog parameters give a non-convex N");
        prev = slope;
    }
    return f;
}

double YoungFn::operator()(double x) const {
    if (x <= 0.0) return 0.0;
    switch (kind) {
        case Kind::power: return std::pow(x, p);
        case Kind::exp2: return std::expm1(x * x);
        case Kind::xlogx: return x * std::log1p(x);
        case Kind::llog: return std::pow(x, p) * std::pow(std::log(std::exp(1.0) + x), a);
    }
    return 0.0;
}

double YoungFn::inverse(double y) const {
    if (y <= 0.0) return 0.0;
    if (kind == Kind::power) return std::pow(y, 1.0 / p);
    double lo = 0.0, hi = 1.0;
    while ((*this)(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw ConvergenceError("Young function inverse: no bracket");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((*this)(mid) < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

std::string YoungFn::describe() const {
    switch (kind) {
        case Kind::power: return "pow:" + num(p);
        case Kind::exp2: return "exp2";
        case Kind::xlogx: return "xlogx";
        case Kind::llog: return "llog:" + num(p) + "," + num(a);
    }
    return "";
}

SpaceSpec SpaceSpec::lp(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("Lp: p must be a finite number >= 1");
    return {space::Lp{p}};
}

SpaceSpec SpaceSpec::lorentz(double p, double q) {
    if (!(p >= 1.0) || !std::isfinite(p) || !(q >= 1.0)) throw InvalidArgument("Lorentz: need p >= 1 finite and q >= 1");
    if (p == 1.0 && q > 1.0) throw InvalidArgument("Lorentz: L^{1,q} with q > 1 is not normable");
    return {space::LorentzPQ{p, q}};
}

SpaceSpec SpaceSpec::lambda(ConcaveFn phi) { return {space::LorentzLambda{phi}}; }
SpaceSpec SpaceSpec::marcinkiewicz(ConcaveFn phi) { return {space::Marcinkiewicz{phi}}; }
SpaceSpec SpaceSpec::orlicz(YoungFn N) { return {space::Orlicz{N}}; }

SpaceSpec SpaceSpec::log_refined(const SpaceSpec& base, int k, WeightVariant variant) {
    if (k < 1) throw InvalidArgument("log-refined space: k must be a positive integer");
    if (base.log_depth() >= 3) throw InvalidArgument("log-refined space: nesting depth is limited to 3");
    return {space::LogRefined{std::make_shared<const SpaceSpec>(base), k, variant}};
}

double SpaceSpec::lp_exponent() const {
    if (!is_lp()) throw InvalidArgument("space is not Lp");
    return std::get<space::Lp>(v).p;
}

int SpaceSpec::log_depth() const {
    if (auto* l = std::get_if<space::LogRefined>(&v)) return 1 + l->base->log_depth();
    return 0;
}

SpaceSpec SpaceSpec::parse(const std::string& text) {
    auto c = text.find(':');
    if (c == std::string::npos) throw InvalidArgument("space spec: missing ':' in '" + text + "'");
    std::string head = text.substr(0, c), rest = text.substr(c + 1);
    if (head == "lp") return lp(parse_number(rest));
    if (head == "lorentz") {
        auto a = split(rest, ',');
        if (a.size() != 2) throw InvalidArgument("space spec: lorentz:P,Q");
        return lorentz(parse_number(a[0]), parse_number(a[1]));
    }
    if (head == "lambda") return lambda(parse_concave(rest));
    if (head == "marcinkiewicz") return marcinkiewicz(parse_concave(rest));
    if (head == "orlicz") return orlicz(parse_young(rest));
    if (head == "xklog") {
        WeightVariant variant = WeightVariant::one_plus_ln;
        auto last = rest.rfind(',');
        if (last == std::string::npos) throw InvalidArgument("space spec: xklog:BASE,K[,ln|one_plus_ln]");
        std::string tail = rest.substr(last + 1);
        if (tail == "ln" || tail == "one_plus_ln") {
            variant = tail == "ln" ? WeightVariant::ln : WeightVariant::one_plus_ln;
            rest = rest.substr(0, last);
            last = rest.rfind(',');
            if (last == std::string::npos) throw InvalidArgument("space spec: xklog:BASE,K[,ln|one_plus_ln]");
        }
        double k = parse_number(rest.substr(last + 1));
        if (k != std::floor(k) || k < 1 || k > 64) throw InvalidArgument("space spec: xklog order must be a positive integer");
        return log_refined(parse(rest.substr(0, last)), int(k), variant);
    }
    throw InvalidArgument("space spec: unknown space '" + head + "'");
}

std::string SpaceSpec::describe() const {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, space::Lp>)
                return "lp:" + num(s.p);
            else if constexpr (std::is_same_v<T, space::LorentzPQ>)
                return "lorentz:" + num(s.p) + "," + num(s.q);
            else if constexpr (std::is_same_v<T, space::LorentzLambda>)
                return "lambda:" + s.phi.describe();
            else if constexpr (std::is_same_v<T, space::Marcinkiewicz>)
                return "marcinkiewicz:" + s.phi.describe();
            else if constexpr (std::is_same_v<T, space::Orlicz>)
                return "orlicz:" + s.N.describe();
            else
                return "xklog:" + s.base->describe() + "," + std::to_string(s.k) + "," +
                       (s.variant == WeightVariant::ln ? "ln" : "one_plus_ln");
        },
        v);
}

}  // namespace dimsob
