#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dimsob/isoprofile.hpp"
#include "dimsob/rearrange.hpp"
#include "dimsob/report.hpp"
#include "dimsob/rispace.hpp"

namespace dimsob {

// Decreasing radial shapes g on [0,1].
enum class Shape { linear, quadratic, bump, cosine, exp, quartic, constant };
// 1-D shapes for tensor families on the cube.
enum class Shape1D { identity, sine, square };
// f = phi(x_1), prod phi(x_i), max(phi(x_1), phi(x_2))
enum class TensorMode { first, product, max2 };

Shape parse_shape(const std::string& s);
std::string to_string(Shape s);

struct ShapeFn {
    Shape shape;
    double g(double r) const;
    double dg(double r) const;
    double d2g(double r) const;
    // g^{(j)}(1) = 0 for j < order
    bool vanishes_to_order(int order) const;
};

enum class Geometry { rn, ball, sphere, cube };

Geometry parse_geometry(const std::string& s);
std::string to_string(Geometry g);

// "radial:SHAPE[+OFFSET]" for rn/ball/sphere, "tensor:MODE:SHAPE" for the cube.
struct Family {
    enum class Kind { radial, tensor };
    Kind kind = Kind::radial;
    Shape shape = Shape::linear;
    double offset = 0.0;
    TensorMode mode = TensorMode::first;
    Shape1D shape1d = Shape1D::identity;

    static Family parse(const std::string& s);
    static Family radial(Shape s, double offset = 0.0);
    static Family tensor(TensorMode m, Shape1D s);
    std::string describe() const;
};

// Normalized measure of the geodesic cap of radius theta on S^n, by quadrature of sin^{n-1}.
double cap_measure(int n, double theta);

struct FamilyProfiles {
    StepProfile f;         // f*
    StepProfile gradient;  // |grad f|*
    StepProfile hessian;   // |D^2 f|* (radial families on rn/ball only)
    bool has_hessian = false;
    double mc_halfwidth = 0.0;  // DKW band in measure, 0 for analytic families
    std::size_t samples = 0;
};

// f*, |grad f|* and |D^2 f|* of a radial family. rn uses the ball of unit volume, ball and sphere the
// normalized measure. `steps` bounds the measure and value increments of each radial panel.
FamilyProfiles radial_profiles(Geometry geometry, int n, const Family& family, std::size_t steps = 512);
// f* alone; throws for non-monotone g.
StepProfile radial_rearrangement(Geometry geometry, int n, const Family& family, std::size_t steps = 512);

struct McRearrangement {
    StepProfile profile;
    StepProfile gradient;
    double ci_halfwidth = 0.0;
    std::size_t samples = 0;
};

// Empirical rearrangement from uniform samples on Q^n with the DKW band sqrt(ln(2/delta)/(2N)), delta = 1e-3.
// Substream seed: seed_seq{seed lo, seed hi, n, stream}.
McRearrangement mc_rearrangement(const Family& family, int n, std::size_t samples, std::uint64_t seed,
                                 std::uint64_t stream = 0);

enum class LhsMode { subtract_tail, oscillation, plain, median };

LhsMode parse_lhs_mode(const std::string& s);

// int_0^b ||inner(t)||_X G(t) dt with inner per mode:
// (f*(.) - f*(t)) chi_[0,t), (f** - f*) chi_[0,t), f* chi_[0,t), (f - med f)* chi_[0,t).
double lhs_functional(const StepProfile& profile, const SpaceSpec& space, const WeightFunction& G, LhsMode mode,
                      double b = 0.5);

enum class OperatorBudget { P, Q, Q_QJ };

// Upper bound of the operator norm used by rhs_bound; +inf when unbounded or uncertified.
double operator_budget_bound(const SpaceSpec& space, const ProfileSpec& spec, OperatorBudget budget);
// operator bound * ||gradient||_X * int_0^r (t/J) G; 0 for a zero gradient.
double rhs_bound(const StepProfile& gradient, const SpaceSpec& space, const ProfileSpec& spec, const WeightFunction& G,
                 OperatorBudget budget, double r = 0.5);

enum class Theorem { main1, main2, teo01, ordenk, inclusion, esfera };

Theorem parse_theorem(const std::string& s);
std::string to_string(Theorem t);

struct ExperimentConfig {
    Theorem theorem = Theorem::main1;
    SpaceSpec space = SpaceSpec::lp(2.0);
    Geometry geometry = Geometry::ball;
    int n = 3;
    Family family;
    int part = 1;  // teo01: 1 (Q) or 2 (P); esfera: 1, 2 or 3
    int k = 1;     // ordenk order
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    double quad_tol = 1e-8;
    std::size_t steps = 512;
    std::size_t mc_bins = 1024;
};

VerificationReport verify(const ExperimentConfig& config);

// Profiles for a config; Monte Carlo on the cube, analytic otherwise.
FamilyProfiles build_profiles(const ExperimentConfig& config, std::size_t steps);

// Uniform constant for a geometry: sup over n >= 1 of geometry_constant (rn) or its limit (others).
double uniform_geometry_bound(Geometry g);

struct SweepResult {
    std::vector<SweepRow> rows;
    double uniform_bound = 0.0;
    double operator_bound = 0.0;
    bool pass = true;
};

// For each n: ratio = int_0^1 ||(f* - f*(t)) chi_[0,t)||_X dt/(t (ln 1/t)^{1/2}) / ||grad f||_X.
// Per-n failures are recorded in the row, not thrown.
SweepResult dimension_sweep(const ExperimentConfig& base, int n_lo, int n_hi, unsigned jobs = 1);

// int_0^1 ||(f**-f*) chi_[0,t)||_X dt/(t (ln 1/t)^{1/2}) >= 2 ||(f**-f*) (ln 1/.)^{1/2}||_X.
// The report stores the right side as lhs and the integral as rhs.
VerificationReport chain_inequality_check(const StepProfile& profile, const SpaceSpec& space);

}  // namespace dimsob
