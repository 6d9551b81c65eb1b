#include "dimsob/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "dimsob/error.hpp"
#include "dimsob/numeric.hpp"
#include "dimsob/parallel.hpp"

namespace dimsob {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

double y_of(double t) { return t >= 1.0 ? 0.0 : std::sqrt(std::log(1.0 / t)); }

}  // namespace

Shape parse_shape(const std::string& s) {
    if (s == "linear") return Shape::linear;
    if (s == "quadratic") return Shape::quadratic;
    if (s == "bump") return Shape::bump;
    if (s == "cosine") return Shape::cosine;
    if (s == "exp") return Shape::exp;
    if (s == "quartic") return Shape::quartic;
    if (s == "constant") return Shape::constant;
    throw InvalidArgument("unknown shape '" + s + "'");
}

std::string to_string(Shape s) {
    switch (s) {
        case Shape::linear: return "linear";
        case Shape::quadratic: return "quadratic";
        case Shape::bump: return "bump";
        case Shape::cosine: return "cosine";
        case Shape::exp: return "exp";
        case Shape::quartic: return "quartic";
        case Shape::constant: return "constant";
    }
    return "";
}

double ShapeFn::g(double r) const {
    switch (shape) {
        case Shape::linear: return 1.0 - r;
        case Shape::quadratic: return 1.0 - r * r;
        case Shape::bump: return (1.0 - r) * (1.0 - r);
        case Shape::cosine: return 0.5 * (1.0 + std::cos(kPi * r));
        case Shape::exp: return std::exp(-3.0 * r) - std::exp(-3.0);
        case Shape::quartic: return (1.0 - r * r) * (1.0 - r * r);
        case Shape::constant: return 1.0;
    }
    return 0.0;
}

double ShapeFn::dg(double r) const {
    switch (shape) {
        case Shape::linear: return -1.0;
        case Shape::quadratic: return -2.0 * r;
        case Shape::bump: return -2.0 * (1.0 - r);
        case Shape::cosine: return -0.5 * kPi * std::sin(kPi * r);
        case Shape::exp: return -3.0 * std::exp(-3.0 * r);
        case Shape::quartic: return -4.0 * r * (1.0 - r * r);
        case Shape::constant: return 0.0;
    }
    return 0.0;
}

double ShapeFn::d2g(double r) const {
    switch (shape) {
        case Shape::linear: return 0.0;
        case Shape::quadratic: return -2.0;
        case Shape::bump: return 2.0;
        case Shape::cosine: return -0.5 * kPi * kPi * std::cos(kPi * r);
        case Shape::exp: return 9.0 * std::exp(-3.0 * r);
        case Shape::quartic: return -4.0 + 12.0 * r * r;
        case Shape::constant: return 0.0;
    }
    return 0.0;
}

bool ShapeFn::vanishes_to_order(int order) const {
    if (order <= 0) return true;
    if (shape == Shape::constant) return false;
    if (order == 1) return true;
    bool first = shape == Shape::bump || shape == Shape::cosine || shape == Shape::quartic;
    return order == 2 && first;
}

Geometry parse_geometry(const std::string& s) {
    if (s == "rn") return Geometry::rn;
    if (s == "ball") return Geometry::ball;
    if (s == "sphere") return Geometry::sphere;
    if (s == "cube") return Geometry::cube;
    throw InvalidArgument("unknown geometry '" + s + "' (expected rn, ball, sphere or cube)");
}

std::string to_string(Geometry g) {
    switch (g) {
        case Geometry::rn: return "rn";
        case Geometry::ball: return "ball";
        case Geometry::sphere: return "sphere";
        case Geometry::cube: return "cube";
    }
    return "";
}

Family Family::radial(Shape s, double offset) {
    Family f;
    f.kind = Kind::radial;
    f.shape = s;
    f.offset = offset;
    return f;
}

Family Family::tensor(TensorMode m, Shape1D s) {
    Family f;
    f.kind = Kind::tensor;
    f.mode = m;
    f.shape1d = s;
    return f;
}

Family Family::parse(const std::string& s) {
    auto parts = split(s, ':');
    if (parts.size() == 2 && (parts[0] == "radial" || parts[0] == "cap")) {
        std::string name = parts[1];
        double offset = 0.0;
        auto plus = name.find('+');
        if (plus != std::string::npos) {
            try {
                offset = std::stod(name.substr(plus + 1));
            } catch (const std::exception&) {
                throw InvalidArgument("family: bad offset in '" + s + "'");
            }
            name = name.substr(0, plus);
        }
        return radial(parse_shape(name), offset);
    }
    if (parts.size() == 3 && parts[0] == "tensor") {
        TensorMode m;
        if (parts[1] == "first")
            m = TensorMode::first;
        else if (parts[1] == "product")
            m = TensorMode::product;
        else if (parts[1] == "max2")
            m = TensorMode::max2;
        else
            throw InvalidArgument("family: unknown tensor mode '" + parts[1] + "'");
        Shape1D sh;
        if (parts[2] == "identity")
            sh = Shape1D::identity;
        else if (parts[2] == "sine")
            sh = Shape1D::sine;
        else if (parts[2] == "square")
            sh = Shape1D::square;
        else
            throw InvalidArgument("family: unknown 1-D shape '" + parts[2] + "'");
        return tensor(m, sh);
    }
    throw InvalidArgument("family: expected radial:SHAPE[+OFFSET] or tensor:MODE:SHAPE, got '" + s + "'");
}

std::string Family::describe() const {
    if (kind == Kind::radial) {
        std::string s = "radial:" + to_string(shape);
        if (offset != 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "+%.12g", offset);
            s += buf;
        }
        return s;
    }
    const char* m = mode == TensorMode::first ? "first" : mode == TensorMode::product ? "product" : "max2";
    const char* sh = shape1d == Shape1D::identity ? "identity" : shape1d == Shape1D::sine ? "sine" : "square";
    return std::string("tensor:") + m + ":" + sh;
}

namespace {

double sphere_normalizer(int n) { return std::sqrt(kPi) * std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n + 1))); }

double cap_piece(int n, double a, double b) {
    if (n == 1) return b - a;
    auto q = integrate([n](double th) { return std::pow(std::sin(th), n - 1); }, a, b, 1e-12);
    return q.value;
}

}  // namespace

double cap_measure(int n, double theta) {
    if (n < 1) throw InvalidArgument("cap measure: n must be >= 1");
    if (theta <= 0.0) return 0.0;
    if (theta >= kPi) return 1.0;
    double v = cap_piece(n, 0.0, std::min(theta, 0.5 * kPi));
    if (theta > 0.5 * kPi) v += cap_piece(n, 0.5 * kPi, theta);
    return std::min(1.0, v / sphere_normalizer(n));
}

FamilyProfiles radial_profiles(Geometry geometry, int n, const Family& family, std::size_t steps) {
    if (family.kind != Family::Kind::radial) throw InvalidArgument("radial profiles: family must be radial");
    if (geometry == Geometry::cube) throw InvalidArgument("radial profiles: the cube carries tensor families");
    if (n < 1) throw InvalidArgument("radial profiles: n must be >= 1");
    if (steps < 8) throw InvalidArgument("radial profiles: need at least 8 steps");
    const ShapeFn S{family.shape};
    const double range = S.g(0.0) - S.g(1.0);
    const double dsteps = double(steps);
    const bool sphere = geometry == Geometry::sphere;
    const double Z = sphere ? sphere_normalizer(n) : 1.0;
    auto measure = [&](double a, double b) {
        if (sphere) return cap_piece(n, kPi * a, kPi * b) / Z;
        return std::pow(b, n) - std::pow(a, n);
    };

    std::vector<double> seeds;
    for (std::size_t i = 0; i <= steps; ++i) seeds.push_back(double(i) / dsteps);
    for (int j = 1; j <= 40; ++j) seeds.push_back(std::ldexp(1.0, -j));
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    struct Panel {
        double a, b, w;
    };
    std::vector<Panel> panels;
    std::vector<Panel> stack;
    for (std::size_t i = seeds.size() - 1; i > 0; --i) stack.push_back({seeds[i - 1], seeds[i], -1.0});
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        if (p.w < 0.0) p.w = measure(p.a, p.b);
        double ga = S.g(p.a), gb = S.g(p.b);
        if (gb > ga + 1e-14) throw InvalidArgument("radial family: g must be non-increasing");
        bool split = (p.w > 1.0 / dsteps || ga - gb > range / dsteps) && p.b - p.a > 1e-12;
        if (split) {
            double m = 0.5 * (p.a + p.b);
            stack.push_back({m, p.b, -1.0});
            stack.push_back({p.a, m, -1.0});
        } else {
            panels.push_back(p);
        }
    }

    double total = 0.0;
    for (const auto& p : panels) total += p.w;
    const double gscale = geometry == Geometry::rn ? std::exp(log_ball_volume(n) / n) : sphere ? 1.0 / kPi : 1.0;
    std::vector<WeightedSample::Entry> ef, eg, eh;
    for (const auto& p : panels) {
        if (!(p.w > 0.0)) continue;
        double w = p.w / total;
        double r = 0.5 * (p.a + p.b);
        ef.push_back({S.g(r) + family.offset, w});
        eg.push_back({std::fabs(S.dg(r)) * gscale, w});
        if (!sphere) {
            double h = std::fabs(S.d2g(r));
            if (n >= 2) h = std::max(h, std::fabs(S.dg(r)) / r);
            eh.push_back({h * gscale * gscale, w});
        }
    }
    FamilyProfiles out;
    out.f = decreasing_rearrangement(WeightedSample::make(std::move(ef)));
    out.gradient = decreasing_rearrangement(WeightedSample::make(std::move(eg)));
    if (!sphere) {
        out.hessian = decreasing_rearrangement(WeightedSample::make(std::move(eh)));
        out.has_hessian = true;
    }
    return out;
}

StepProfile radial_rearrangement(Geometry geometry, int n, const Family& family, std::size_t steps) {
    return radial_profiles(geometry, n, family, steps).f;
}

McRearrangement mc_rearrangement(const Family& family, int n, std::size_t samples, std::uint64_t seed,
                                 std::uint64_t stream) {
    if (family.kind != Family::Kind::tensor) throw InvalidArgument("Monte Carlo rearrangement: family must be a tensor family");
    if (samples < 10000) throw InvalidArgument("Monte Carlo rearrangement: need at least 1e4 samples");
    if (n < 1) throw InvalidArgument("Monte Carlo rearrangement: n must be >= 1");
    if (family.mode == TensorMode::max2 && n < 2) throw InvalidArgument("Monte Carlo rearrangement: max2 needs n >= 2");
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(n), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto phi = [&](double x) {
        switch (family.shape1d) {
            case Shape1D::identity: return x;
            case Shape1D::sine: return std::sin(kPi * x);
            case Shape1D::square: return x * x;
        }
        return x;
    };
    auto dphi = [&](double x) {
        switch (family.shape1d) {
            case Shape1D::identity: return 1.0;
            case Shape1D::sine: return kPi * std::cos(kPi * x);
            case Shape1D::square: return 2.0 * x;
        }
        return 1.0;
    };
    const std::size_t dims = family.mode == TensorMode::first ? 1 : family.mode == TensorMode::max2 ? 2 : std::size_t(n);
    std::vector<double> vals(samples), grads(samples), x(dims), p(dims), d(dims);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < dims; ++i) {
            x[i] = U(rng);
            p[i] = phi(x[i]);
            d[i] = dphi(x[i]);
        }
        if (family.mode == TensorMode::first) {
            vals[s] = p[0];
            grads[s] = std::fabs(d[0]);
        } else if (family.mode == TensorMode::max2) {
            std::size_t k = p[0] >= p[1] ? 0 : 1;
            vals[s] = p[k];
            grads[s] = std::fabs(d[k]);
        } else {
            double prod = 1.0, g2 = 0.0;
            for (std::size_t i = 0; i < dims; ++i) prod *= p[i];
            for (std::size_t i = 0; i < dims; ++i) {
                double others = 1.0;
                for (std::size_t j = 0; j < dims; ++j)
                    if (j != i) others *= p[j];
                g2 += d[i] * others * d[i] * others;
            }
            vals[s] = prod;
            grads[s] = std::sqrt(g2);
        }
    }
    McRearrangement out;
    out.samples = samples;
    bool all_equal = std::all_of(vals.begin(), vals.end(), [&](double v) { return v == vals[0]; });
    out.ci_halfwidth = all_equal ? 0.0 : std::sqrt(std::log(2.0 / 1e-3) / (2.0 * double(samples)));
    out.profile = rearrange_equal_weights(std::move(vals));
    out.gradient = rearrange_equal_weights(std::move(grads));
    return out;
}

LhsMode parse_lhs_mode(const std::string& s) {
    if (s == "subtract_tail") return LhsMode::subtract_tail;
    if (s == "oscillation") return LhsMode::oscillation;
    if (s == "plain") return LhsMode::plain;
    if (s == "median") return LhsMode::median;
    throw InvalidArgument("unknown LHS mode '" + s + "'");
}

namespace {

// int_a^b (c/s)^p ds
double osc_piece(double c, double a, double b, double p) {
    if (c <= 0.0 || b <= a) return 0.0;
    if (p == 1.0) return c * std::log(b / a);
    double r = c / a;
    return pow_fast(r, p) * a * -std::expm1((p - 1.0) * std::log(a / b)) / (p - 1.0);
}

// Rearrangement of s -> value(s) on [0,t), 0 on [t,1), with each step split into `sub` pieces.
StepProfile rearranged_on(const StepProfile& f, double t, const std::function<double(double)>& value, int sub) {
    std::vector<WeightedSample::Entry> e;
    for (std::size_t j = 0; j < f.size() && f.left(j) < t; ++j) {
        double a = f.left(j), b = std::min(f.right(j), t);
        for (int i = 0; i < sub; ++i) {
            double x0, x1;
            if (a > 0.0) {
                x0 = a * std::pow(b / a, double(i) / sub);
                x1 = i + 1 == sub ? b : a * std::pow(b / a, double(i + 1) / sub);
            } else {
                x0 = b * double(i) / sub;
                x1 = b * double(i + 1) / sub;
            }
            if (x1 > x0) e.push_back({std::fabs(value(0.5 * (x0 + x1))), x1 - x0});
        }
    }
    if (t < 1.0) e.push_back({0.0, 1.0 - t});
    return decreasing_rearrangement(WeightedSample::make(std::move(e)));
}

QuadResult integrate_y(const std::function<double(double)>& F, const StepProfile& f, double b) {
    std::vector<double> ys{y_of(b)};
    const auto& br = f.breakpoints();
    for (std::size_t j = br.size(); j-- > 0;)
        if (br[j] < b) ys.push_back(y_of(br[j]));
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    QuadResult body = ys.size() > 1 ? integrate_panels(F, ys, 1e-12, 15) : QuadResult{};
    QuadResult tail = integrate(F, ys.back(), kInf, 1e-12, 15);
    return {body.value + tail.value, body.error + tail.error};
}

double plain_lhs(const StepProfile& P, const SpaceSpec& space, const WeightFunction& G, double b) {
    TruncatedNorm N(space, P);
    auto F = [&](double y) { return N(std::exp(-y * y)) * G.density_y(y); };
    auto q = integrate_y(F, P, b);
    require_accuracy(q, 1e-8, "LHS functional");
    return q.value;
}

}  // namespace

double lhs_functional(const StepProfile& profile, const SpaceSpec& space, const WeightFunction& G, LhsMode mode, double b) {
    if (!(b > 0.0 && b <= 1.0)) throw InvalidArgument("LHS functional: interval end must lie in (0,1]");
    switch (mode) {
        case LhsMode::subtract_tail: {
            const bool lp = space.is_lp();
            const double p = lp ? space.lp_exponent() : 0.0;
            CompensatedSum acc;
            for (std::size_t j = 1; j < profile.size() && profile.left(j) < b; ++j) {
                double top = std::min(profile.right(j), b);
                double gint = G.integral_y(y_of(top), y_of(profile.left(j)));
                if (gint == 0.0) continue;
                double vj = profile.value(j), Nj;
                if (lp) {
                    double M = profile.value(0) - vj;
                    if (M <= 0.0) continue;
                    CompensatedSum s;
                    for (std::size_t i = 0; i < j; ++i) s += pow_fast((profile.value(i) - vj) / M, p) * profile.width(i);
                    Nj = M * std::pow(s.value(), 1.0 / p);
                } else {
                    double tm = 0.5 * (profile.left(j) + top);
                    Nj = ri_norm(space, restrict(profile, tm, RestrictMode::subtract_tail));
                }
                acc += Nj * gint;
            }
            return acc.value();
        }
        case LhsMode::plain: {
            if (b < 1.0) return plain_lhs(restrict(profile, b, RestrictMode::truncate), space, G, b);
            if (!profile.nonnegative()) throw InvalidArgument("LHS functional (plain): profile must be non-negative");
            return plain_lhs(profile, space, G, b);
        }
        case LhsMode::median: {
            if (b > 0.5) throw InvalidArgument("LHS functional (median): interval must lie in (0,1/2]");
            auto g = restrict(profile.shifted(-median_value(profile)), 0.5, RestrictMode::truncate);
            return plain_lhs(g, space, G, b);
        }
        case LhsMode::oscillation: {
            const std::size_t m = profile.size();
            std::function<double(double)> N;
            std::vector<double> c(m, 0.0), full(m, 0.0);
            double p = 0.0;
            OscillationEvaluator osc(profile);
            if (space.is_lp()) {
                p = space.lp_exponent();
                CompensatedSum acc;
                for (std::size_t i = 1; i < m; ++i) {
                    c[i] = std::max(0.0, profile.prefix_integral(i - 1) - profile.value(i) * profile.left(i));
                    acc += osc_piece(c[i], profile.left(i), profile.right(i), p);
                    full[i] = acc.value();
                }
                N = [&](double t) {
                    std::size_t j = profile.step_index(t);
                    double np = (j == 0 ? 0.0 : full[j - 1]) + osc_piece(c[j], profile.left(j), t, p);
                    return std::pow(np, 1.0 / p);
                };
            } else {
                N = [&](double t) { return ri_norm(space, rearranged_on(profile, t, [&](double s) { return osc(s); }, 8)); };
            }
            auto F = [&](double y) {
                double t = std::exp(-y * y);
                if (t >= 1.0 || t <= 0.0) return 0.0;
                return N(t) * G.density_y(y);
            };
            auto q = integrate_y(F, profile, b);
            require_accuracy(q, 1e-8, "LHS functional");
            return q.value;
        }
    }
    return 0.0;
}

double operator_budget_bound(const SpaceSpec& space, const ProfileSpec& spec, OperatorBudget budget) {
    switch (budget) {
        case OperatorBudget::P: return p_norm_bound(space);
        case OperatorBudget::Q: return qa_norm_bound(space, 0.0);
        case OperatorBudget::Q_QJ: {
            double q = qa_norm_bound(space, 0.0);
            double a = 0.0;
            if (!spec.power_type(a) || !(a < 1.0)) return kInf;
            return q + qa_norm_bound(space, a);
        }
    }
    return kInf;
}

double rhs_bound(const StepProfile& gradient, const SpaceSpec& space, const ProfileSpec& spec, const WeightFunction& G,
                 OperatorBudget budget, double r) {
    if (!gradient.nonnegative()) throw InvalidArgument("RHS bound: gradient profile must be non-negative");
    double gn = ri_norm(space, gradient);
    if (gn == 0.0) return 0.0;
    double op = operator_budget_bound(space, spec, budget);
    if (std::isinf(op)) return kInf;
    double T = transference_integral(spec, G, r);
    if (std::isinf(T)) return kInf;
    return op * gn * T;
}

Theorem parse_theorem(const std::string& s) {
    if (s == "main1") return Theorem::main1;
    if (s == "main2") return Theorem::main2;
    if (s == "teo01") return Theorem::teo01;
    if (s == "ordenk") return Theorem::ordenk;
    if (s == "inclusion") return Theorem::inclusion;
    if (s == "esfera") return Theorem::esfera;
    throw InvalidArgument("unknown theorem '" + s + "'");
}

std::string to_string(Theorem t) {
    switch (t) {
        case Theorem::main1: return "main1";
        case Theorem::main2: return "main2";
        case Theorem::teo01: return "teo01";
        case Theorem::ordenk: return "ordenk";
        case Theorem::inclusion: return "inclusion";
        case Theorem::esfera: return "esfera";
    }
    return "";
}

namespace {

ProfileSpec estimator_for(Geometry g, int n) {
    switch (g) {
        case Geometry::rn: return ProfileSpec::power_rn(n);
        case Geometry::ball: return ProfileSpec::ball(n);
        case Geometry::sphere: return ProfileSpec::sphere(n);
        case Geometry::cube: return ProfileSpec::gaussian(1.0);
    }
    return ProfileSpec::constant(1.0);
}

// smallest natural M with lower index > 1/M
int index_threshold(const SpaceSpec& space) {
    double alpha = boyd_indices(space).lower;
    if (!(alpha > 0.0)) throw InvalidArgument("the lower Boyd index must be positive");
    return int(std::floor(1.0 / alpha)) + 1;
}

struct Eval {
    double lhs = 0.0;
    double rhs = 0.0;
    std::map<std::string, double> constants;
    std::vector<std::string> notes;
};

bool is_constant_family(const Family& f) { return f.kind == Family::Kind::radial && f.shape == Shape::constant; }

void require_boundary_vanishing(const ExperimentConfig& c, int order) {
    if (c.family.kind != Family::Kind::radial)
        throw InvalidArgument(to_string(c.theorem) + ": needs a radial family vanishing on the boundary");
    if (!ShapeFn{c.family.shape}.vanishes_to_order(order) || c.family.offset != 0.0)
        throw InvalidArgument(to_string(c.theorem) + ": family " + c.family.describe() + " does not vanish to order " +
                              std::to_string(order) + " on the boundary");
}

Eval evaluate(const ExperimentConfig& c, const FamilyProfiles& P) {
    const auto G = WeightFunction::log_half();
    const auto& X = c.space;
    Eval e;
    auto J = estimator_for(c.geometry, c.n);
    switch (c.theorem) {
        case Theorem::main1:
            e.lhs = lhs_functional(P.f, X, G, LhsMode::subtract_tail, 0.5);
            e.rhs = rhs_bound(P.gradient, X, J, G, OperatorBudget::Q, 0.5);
            break;
        case Theorem::main2:
            e.lhs = lhs_functional(P.f, X, G, LhsMode::oscillation, 0.5);
            e.rhs = rhs_bound(P.gradient, X, J, G, OperatorBudget::P, 0.5);
            break;
        case Theorem::inclusion:
            e.lhs = lhs_functional(P.f, X, G, LhsMode::median, 0.5);
            e.rhs = rhs_bound(P.gradient, X, J, G, OperatorBudget::Q_QJ, 0.5);
            break;
        case Theorem::teo01: {
            bool part2 = c.part == 2;
            e.lhs = lhs_functional(P.f, X, G, part2 ? LhsMode::oscillation : LhsMode::subtract_tail, 1.0);
            double C = kInf;
            if (c.geometry == Geometry::rn)
                C = geometry_constant(GeometryKind::rn, c.n);
            else if (c.geometry == Geometry::ball)
                C = std::sqrt(kPi / c.n);
            else
                e.notes.push_back("no finite transference constant over (0,1) on the sphere");
            e.constants["transference"] = C;
            double gn = ri_norm(X, P.gradient);
            double op = part2 ? p_norm_bound(X) : qa_norm_bound(X, 0.0);
            e.constants["operator"] = op;
            e.rhs = gn == 0.0 ? 0.0 : C * op * gn;
            break;
        }
        case Theorem::esfera: {
            double C = geometry_constant(GeometryKind::sphere, c.n);
            e.constants["transference"] = C;
            e.constants["printed_item_constant"] = sphere_item_printed_constant(c.n);
            e.constants["printed_trend_constant"] = sphere_printed_constant(c.n);
            double gn = ri_norm(X, P.gradient);
            double op;
            if (c.part == 1) {
                e.lhs = lhs_functional(P.f, X, G, LhsMode::subtract_tail, 0.5);
                op = qa_norm_bound(X, 0.0);
            } else if (c.part == 2) {
                e.lhs = lhs_functional(P.f, X, G, LhsMode::oscillation, 0.5);
                op = p_norm_bound(X);
            } else {
                int M = index_threshold(X);
                e.constants["M"] = M;
                e.lhs = lhs_functional(P.f, X, G, LhsMode::median, 0.5);
                op = qa_norm_bound(X, 0.0) + qa_norm_bound(X, 1.0 / M);
            }
            e.constants["operator"] = op;
            e.rhs = gn == 0.0 ? 0.0 : C * op * gn;
            break;
        }
        case Theorem::ordenk: {
            int M = index_threshold(X);
            e.constants["M"] = M;
            double Cg = c.geometry == Geometry::rn ? geometry_constant(GeometryKind::rn, c.n) : std::sqrt(kPi / c.n);
            auto c1 = [&](const SpaceSpec& Y) { return Cg * (qa_norm_bound(Y, 0.0) + qa_norm_bound(Y, 1.0 / M)); };
            e.lhs = xklog_norm(X, c.k, P.f, WeightVariant::ln);
            double cX = c1(X);
            e.constants["c1"] = cX;
            if (c.k == 1) {
                e.rhs = cX * ri_norm(X, P.gradient);
            } else {
                double cY = c1(SpaceSpec::log_refined(X, 1, WeightVariant::ln));
                e.constants["c1_log"] = cY;
                double cK = 0.25 * cY * cX;
                e.constants["c2"] = cK;
                double hn = ri_norm(X, P.hessian);
                e.rhs = hn == 0.0 ? 0.0 : cK * hn;
            }
            break;
        }
    }
    return e;
}

void validate(const ExperimentConfig& c) {
    if (c.n < 1) throw InvalidArgument("n must be >= 1");
    if (!(c.quad_tol >= 1e-10)) throw InvalidArgument("quadrature tolerance must be >= 1e-10");
    if (c.steps < 16) throw InvalidArgument("t-grid resolution must be >= 16");
    if (c.geometry == Geometry::cube) {
        if (c.family.kind != Family::Kind::tensor) throw InvalidArgument("the cube carries tensor families");
        if (c.samples < 10000) throw InvalidArgument("Monte Carlo paths need at least 1e4 samples");
        if (c.mc_bins < 16) throw InvalidArgument("Monte Carlo bins must be >= 16");
    } else if (c.family.kind != Family::Kind::radial) {
        throw InvalidArgument("geometry " + to_string(c.geometry) + " carries radial families");
    }
    if (c.geometry == Geometry::sphere && c.n < 2) throw InvalidArgument("the sphere needs n >= 2");
    switch (c.theorem) {
        case Theorem::teo01:
            if (c.part != 1 && c.part != 2) throw InvalidArgument("teo01: part must be 1 or 2");
            if (c.geometry == Geometry::cube) throw InvalidArgument("teo01: cube families do not vanish on the boundary");
            if (!is_constant_family(c.family)) require_boundary_vanishing(c, 1);
            break;
        case Theorem::esfera:
            if (c.geometry != Geometry::sphere) throw InvalidArgument("esfera: geometry must be sphere");
            if (c.part < 1 || c.part > 3) throw InvalidArgument("esfera: part must be 1, 2 or 3");
            if (c.part == 3 && c.n < index_threshold(c.space))
                throw InvalidArgument("esfera part 3: n must be >= M = " + std::to_string(index_threshold(c.space)));
            break;
        case Theorem::ordenk:
            if (c.k == 3)
                throw InvalidArgument("ordenk: k = 3 is available only through the iteration identity (factor 2k/(k-1))");
            if (c.k != 1 && c.k != 2) throw InvalidArgument("ordenk: k must be 1 or 2");
            if (c.geometry != Geometry::rn && c.geometry != Geometry::ball) throw InvalidArgument("ordenk: geometry must be rn or ball");
            require_boundary_vanishing(c, c.k);
            if (c.n < index_threshold(c.space))
                throw InvalidArgument("ordenk: n must be >= M = " + std::to_string(index_threshold(c.space)));
            break;
        default: break;
    }
}

}  // namespace

FamilyProfiles build_profiles(const ExperimentConfig& c, std::size_t steps) {
    if (c.geometry != Geometry::cube) return radial_profiles(c.geometry, c.n, c.family, steps);
    auto mc = mc_rearrangement(c.family, c.n, c.samples, c.seed);
    FamilyProfiles P;
    P.f = coarsen(mc.profile, steps);
    P.gradient = coarsen(mc.gradient, steps);
    P.mc_halfwidth = mc.ci_halfwidth;
    P.samples = mc.samples;
    return P;
}

VerificationReport verify(const ExperimentConfig& c) {
    validate(c);
    VerificationReport rep;
    rep.check = to_string(c.theorem);
    rep.config["theorem"] = to_string(c.theorem);
    rep.config["space"] = c.space.describe();
    rep.config["geometry"] = to_string(c.geometry);
    rep.config["n"] = std::to_string(c.n);
    rep.config["family"] = c.family.describe();
    rep.config["seed"] = std::to_string(c.seed);
    if (c.theorem == Theorem::teo01 || c.theorem == Theorem::esfera) rep.config["part"] = std::to_string(c.part);
    if (c.theorem == Theorem::ordenk) rep.config["k"] = std::to_string(c.k);

    Eval fine, coarse;
    if (c.geometry == Geometry::cube) {
        rep.config["samples"] = std::to_string(c.samples);
        auto mc = mc_rearrangement(c.family, c.n, c.samples, c.seed);
        auto at = [&](const StepProfile& f, const StepProfile& g, std::size_t bins) {
            FamilyProfiles P;
            P.f = coarsen(f, bins);
            P.gradient = coarsen(g, bins);
            return evaluate(c, P);
        };
        fine = at(mc.profile, mc.gradient, c.mc_bins);
        coarse = at(mc.profile, mc.gradient, c.mc_bins / 2);
        double eps = mc.ci_halfwidth, dl = 0.0, dr = 0.0;
        if (eps > 0.0) {
            for (double s : {eps, -eps}) {
                auto e = at(shift_in_measure(mc.profile, s), shift_in_measure(mc.gradient, s), c.mc_bins);
                dl = std::max(dl, std::fabs(e.lhs - fine.lhs));
                if (std::isfinite(e.rhs) && std::isfinite(fine.rhs)) dr = std::max(dr, std::fabs(e.rhs - fine.rhs));
            }
        }
        rep.mc_halfwidth = dl + dr;
        rep.constants["dkw_band"] = eps;
    } else {
        fine = evaluate(c, radial_profiles(c.geometry, c.n, c.family, c.steps));
        coarse = evaluate(c, radial_profiles(c.geometry, c.n, c.family, c.steps / 2));
    }
    rep.lhs = fine.lhs;
    rep.rhs = fine.rhs;
    rep.constants.insert(fine.constants.begin(), fine.constants.end());
    rep.notes = fine.notes;
    rep.disc_slack = std::fabs(fine.lhs - coarse.lhs);
    if (std::isfinite(fine.rhs) && std::isfinite(coarse.rhs)) rep.disc_slack += std::fabs(fine.rhs - coarse.rhs);
    rep.quad_budget = c.quad_tol * (std::fabs(fine.lhs) + (std::isfinite(fine.rhs) ? std::fabs(fine.rhs) : 0.0));
    rep.decide();
    if (rep.vacuous) rep.notes.push_back("vacuous: right-hand side is infinite");
    return rep;
}

double uniform_geometry_bound(Geometry g) {
    switch (g) {
        case Geometry::rn:
        case Geometry::cube: return geometry_constant(GeometryKind::rn, 1);
        case Geometry::ball:
        case Geometry::sphere: {
            GeometryKind k = g == Geometry::ball ? GeometryKind::ball : GeometryKind::sphere;
            double best = geometry_limit(k);
            for (int n = g == Geometry::ball ? 1 : 2; n <= 10000; ++n) best = std::max(best, geometry_constant(k, n));
            return best;
        }
    }
    return kInf;
}

SweepResult dimension_sweep(const ExperimentConfig& base, int n_lo, int n_hi, unsigned jobs) {
    if (n_lo < 1 || n_hi < n_lo) throw InvalidArgument("sweep: need 1 <= n_lo <= n_hi");
    SweepResult out;
    out.rows.resize(std::size_t(n_hi - n_lo + 1));
    const auto G = WeightFunction::log_half();
    parallel_for(out.rows.size(), jobs, [&](std::size_t i) {
        SweepRow& row = out.rows[i];
        ExperimentConfig c = base;
        c.n = n_lo + int(i);
        row.n = c.n;
        try {
            GeometryKind kind = c.geometry == Geometry::ball     ? GeometryKind::ball
                                : c.geometry == Geometry::sphere ? GeometryKind::sphere
                                                                 : GeometryKind::rn;
            row.constant = geometry_constant(kind, c.n);
            auto ratio_of = [&](const StepProfile& f, const StepProfile& g) {
                double gn = ri_norm(c.space, g);
                if (!(gn > 0.0)) throw InvalidArgument("sweep: gradient norm vanishes");
                double l = lhs_functional(f, c.space, G, LhsMode::subtract_tail, 1.0);
                return std::make_pair(l, gn);
            };
            if (c.geometry == Geometry::cube) {
                if (c.family.kind != Family::Kind::tensor) throw InvalidArgument("the cube carries tensor families");
                auto mc = mc_rearrangement(c.family, c.n, c.samples, c.seed);
                auto [l, gn] = ratio_of(coarsen(mc.profile, c.mc_bins), coarsen(mc.gradient, c.mc_bins));
                row.lhs = l;
                row.gradient_norm = gn;
                row.ratio = l / gn;
                double eps = mc.ci_halfwidth, band = 0.0;
                if (eps > 0.0)
                    for (double s : {eps, -eps})
                        for (double s2 : {eps, -eps}) {
                            auto [l2, g2] = ratio_of(coarsen(shift_in_measure(mc.profile, s), c.mc_bins),
                                                     coarsen(shift_in_measure(mc.gradient, s2), c.mc_bins));
                            band = std::max(band, std::fabs(l2 / g2 - row.ratio));
                        }
                row.mc_halfwidth = band;
            } else {
                auto P = radial_profiles(c.geometry, c.n, c.family, c.steps);
                auto [l, gn] = ratio_of(P.f, P.gradient);
                row.lhs = l;
                row.gradient_norm = gn;
                row.ratio = l / gn;
            }
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    double running = 0.0;
    for (auto& row : out.rows) {
        if (row.ok) running = std::max(running, row.ratio);
        row.max_so_far = running;
    }
    out.uniform_bound = uniform_geometry_bound(base.geometry);
    out.operator_bound = qa_norm_bound(base.space, 0.0);
    for (const auto& row : out.rows) {
        if (!row.ok) {
            out.pass = false;
            continue;
        }
        if (base.geometry != Geometry::sphere && row.ratio > out.uniform_bound * out.operator_bound + row.mc_halfwidth)
            out.pass = false;
    }
    return out;
}

VerificationReport chain_inequality_check(const StepProfile& profile, const SpaceSpec& space) {
    VerificationReport rep;
    rep.check = "chain_inequality";
    rep.config["space"] = space.describe();
    const auto G = WeightFunction::log_half();
    rep.rhs = lhs_functional(profile, space, G, LhsMode::oscillation, 1.0);
    OscillationEvaluator osc(profile);
    auto weighted = [&](double s) { return osc(s) * 2.0 * std::sqrt(std::log(1.0 / s)); };
    if (space.is_lp()) {
        const double p = space.lp_exponent();
        QuadResult total;
        for (std::size_t i = 1; i < profile.size(); ++i) {
            double c = profile.prefix_integral(i - 1) - profile.value(i) * profile.left(i);
            if (c <= 0.0) continue;
            auto f = [&](double u) {
                double s = std::exp(u);
                double w = 2.0 * std::sqrt(std::max(0.0, -u));
                return pow_fast(c / s * w, p) * s;
            };
            auto q = integrate(f, std::log(profile.left(i)), std::log(profile.right(i)), 1e-12);
            total.value += q.value;
            total.error += q.error;
        }
        require_accuracy(total, 1e-9, "chain check");
        rep.lhs = std::pow(total.value, 1.0 / p);
    } else {
        rep.lhs = ri_norm(space, rearranged_on(profile, 1.0, weighted, 64));
    }
    rep.quad_budget = 1e-9 * (rep.lhs + rep.rhs);
    rep.decide();
    rep.constants["ratio"] = rep.lhs > 0.0 ? rep.rhs / (rep.lhs / 2.0) : 0.0;
    return rep;
}

}  // namespace dimsob
