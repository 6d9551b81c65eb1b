#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dimsob/rearrange.hpp"

namespace dimsob {

namespace profile {
// I_n(t) = n gamma_n^{1/n} t^{1-1/n}
struct PowerRn {
    int n;
};
// (gamma_{n-1}/gamma_n) 2^{1-1/n} min(t,1-t)^{1-1/n}
struct Ball {
    int n;
};
// (2 omega_{n-1}/omega_n) min(t,1-t)^{1-1/n}
struct Sphere {
    int n;
};
// sqrt(2k/pi) Gamma((n+1)/2)/Gamma(n/2) min(t,1-t)^{1-1/n}
struct Manifold {
    int n;
    double k;
};
// c t (ln 1/t)^{1/2} on (0,1/2]
struct Gaussian {
    double c;
};
// log-linear interpolation of (t_i, J_i)
struct Tabulated {
    std::vector<double> t;
    std::vector<double> J;
};
// I = c; for c = 1 the profile of the interval [0,1]
struct Constant {
    double c;
};
}  // namespace profile

struct ProfileSpec {
    std::variant<profile::PowerRn, profile::Ball, profile::Sphere, profile::Manifold, profile::Gaussian,
                 profile::Tabulated, profile::Constant>
        v;

    static ProfileSpec power_rn(int n);
    static ProfileSpec ball(int n);
    static ProfileSpec sphere(int n);
    static ProfileSpec manifold(int n, double k);
    static ProfileSpec gaussian(double c);
    static ProfileSpec tabulated(std::vector<double> t, std::vector<double> J);
    static ProfileSpec constant(double c);

    std::string describe() const;
    // right end of the domain: 1/2 for the Gaussian estimator, 1 otherwise
    double domain_end() const;
    // J(t) = C t^{1-1/n} on (0,1/2]: returns true and sets a = 1/n
    bool power_type(double& a) const;
    // ln J at t = exp(-y^2), with 1 - t formed without cancellation
    double log_eval_y(double y) const;
};

double profile_eval(const ProfileSpec& spec, double t);

struct WeightFunction {
    enum class Kind { LogHalf, Custom };
    Kind kind = Kind::LogHalf;
    std::function<double(double)> G;
    double sing0 = 1.0;  // G(t) t (ln 1/t)^{sing0} stays bounded as t -> 0
    double sing1 = 0.5;  // G(t) (1-t)^{sing1} stays bounded as t -> 1

    // G(t) = 1 / (t (ln 1/t)^{1/2})
    static WeightFunction log_half();
    static WeightFunction custom(std::function<double(double)> G, double sing0, double sing1);

    double operator()(double t) const;
    // With t = exp(-y^2): G(t) dt = density_y(y) dy (orientation reversed).
    double density_y(double y) const;
    // int_{y0}^{y1} density_y
    double integral_y(double y0, double y1) const;
};

struct TransferenceOptions {
    int shells = 8192;  // dyadic shells near t = 0 used by the ratio test
    double rel_tol = 1e-8;
};

// int_0^r (t/J(t)) G(t) dt; +inf when a divergence test fires; ConvergenceError if inconclusive.
double transference_integral(const ProfileSpec& spec, const WeightFunction& G, double r,
                             const TransferenceOptions& opts = {});

enum class GeometryKind { rn, ball, sphere, manifold };

GeometryKind parse_geometry_kind(const std::string& s);
std::string to_string(GeometryKind k);

double geometry_constant(GeometryKind kind, int n, double curvature = 1.0);
double geometry_limit(GeometryKind kind, double curvature = 1.0);
// (omega_n/omega_{n-1}) sqrt(pi n), the printed trend constant for the sphere, and its limit sqrt(2) pi
double sphere_printed_constant(int n);
double sphere_printed_limit();
// sqrt(pi n) omega_{n-1}/omega_n, the constant printed in the first item of the sphere statement
double sphere_item_printed_constant(int n);

struct GaussianTypeResult {
    double sup;
    double argmax;
};

// sup_t (t/J(t)) int_t^r G
GaussianTypeResult gaussian_type_check(const ProfileSpec& spec, const WeightFunction& G, double r);

class IsoHardyEvaluator {
public:
    IsoHardyEvaluator(ProfileSpec spec, StepProfile profile);
    // (J(t)/t) int_t^{1/2} f(z) dz / J(z), t in (0, 1/2)
    double operator()(double t) const;

private:
    ProfileSpec spec_;
    StepProfile f_;
    double a_ = -1.0;
};

IsoHardyEvaluator iso_hardy_QJ(const ProfileSpec& spec, const StepProfile& profile);

// sup over t in (0,1/4) of t (ln 1/t)^{1/2} / J_{B^n}(t)
double gaussian_near_zero_ratio(int n);

}  // namespace dimsob
