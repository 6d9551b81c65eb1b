#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dimsob/numeric.hpp"
#include "dimsob/rearrange.hpp"

namespace dimsob {

// phi(t) = t^alpha (1 + ln 1/t)^beta; concave, phi(0) = 0.
struct ConcaveFn {
    double alpha = 0.5;
    double beta = 0.0;

    static ConcaveFn power(double alpha);
    static ConcaveFn power_log(double alpha, double beta);
    double operator()(double t) const;
    std::string describe() const;
};

// Young function N for Orlicz spaces.
struct YoungFn {
    enum class Kind { power, exp2, xlogx, llog };
    Kind kind = Kind::power;
    double p = 2.0;  // exponent for power, Q for llog
    double a = 0.0;  // log exponent for llog

    static YoungFn power(double p);
    static YoungFn exp2();
    static YoungFn xlogx();
    static YoungFn llog(double q, double a);
    double operator()(double x) const;
    // N^{-1}(y) by bisection
    double inverse(double y) const;
    std::string describe() const;
};

enum class WeightVariant { ln, one_plus_ln };

struct SpaceSpec;

namespace space {
struct Lp {
    double p;
};
struct LorentzPQ {
    double p;
    double q;  // may be +inf
};
struct LorentzLambda {
    ConcaveFn phi;
};
struct Marcinkiewicz {
    ConcaveFn phi;
};
struct Orlicz {
    YoungFn N;
};
struct LogRefined {
    std::shared_ptr<const SpaceSpec> base;
    int k;
    WeightVariant variant;
};
}  // namespace space

struct SpaceSpec {
    std::variant<space::Lp, space::LorentzPQ, space::LorentzLambda, space::Marcinkiewicz, space::Orlicz,
                 space::LogRefined>
        v;

    static SpaceSpec lp(double p);
    static SpaceSpec lorentz(double p, double q);
    static SpaceSpec lambda(ConcaveFn phi);
    static SpaceSpec marcinkiewicz(ConcaveFn phi);
    static SpaceSpec orlicz(YoungFn N);
    static SpaceSpec log_refined(const SpaceSpec& base, int k, WeightVariant variant = WeightVariant::one_plus_ln);

    // Mini-grammar: lp:P, lorentz:P,Q, lambda:EXPR, marcinkiewicz:EXPR, orlicz:NAME, xklog:BASE,K[,ln|one_plus_ln]
    // EXPR: pow:A | powlog:A,B. NAME: pow:P | exp2 | xlogx | llog:Q,A.
    static SpaceSpec parse(const std::string& text);
    std::string describe() const;

    bool is_lp() const { return std::holds_alternative<space::Lp>(v); }
    double lp_exponent() const;  // requires is_lp()
    int log_depth() const;
};

// Norm of a non-negative decreasing profile.
double ri_norm(const SpaceSpec& space, const StepProfile& profile);

// ||chi_[0,t)||
double fundamental_function(const SpaceSpec& space, double t);

// t -> ||f* chi_[0,t)||, with closed forms where the space allows.
class TruncatedNorm {
public:
    TruncatedNorm(SpaceSpec space, StepProfile profile);
    double operator()(double t) const;
    // Norm is smooth in t between consecutive breakpoints of this list.
    const std::vector<double>& kinks() const { return profile_.breakpoints(); }

private:
    SpaceSpec space_;
    StepProfile profile_;
    double p_ = 0.0;
    std::vector<double> prefix_pow_;
};

enum class HardyMode { P, Q };

class HardyEvaluator {
public:
    HardyEvaluator(StepProfile profile, HardyMode mode, double a);
    double operator()(double t) const;
    HardyMode mode() const { return mode_; }
    double a() const { return a_; }
    const StepProfile& profile() const { return profile_; }

private:
    StepProfile profile_;
    HardyMode mode_;
    double a_;
    std::vector<double> suffix_;  // int_{right(j)}^1 s^{a-1} f
};

// P: (1/t) int_0^t f; Q_a: t^{-a} int_t^1 s^{a-1} f(s) ds, a in [0,1).
HardyEvaluator hardy_transform(const StepProfile& profile, HardyMode mode, double a = 0.0);

// Lower step approximation of a decreasing evaluator on a geometric grid (value at right end of each cell).
StepProfile discretize_decreasing(const std::function<double(double)>& g, const std::vector<double>& breaks);

// E_r f: f*(t/r) on (0, min(r,1)), 0 after.
StepProfile dilation(const StepProfile& profile, double r);

struct DilationNorm {
    double value;
    bool estimated;  // true when a lower estimate from test profiles
};

DilationNorm dilation_norm(const SpaceSpec& space, double r);
// Certified upper bound for h(r): closed form, the log-refined bound, or max{1,r}.
double dilation_norm_upper(const SpaceSpec& space, double r);
// The fixed family of 200 decreasing test profiles.
const std::vector<StepProfile>& dilation_test_profiles();

struct BoydIndices {
    double lower;
    double upper;
    bool estimated;
};

BoydIndices boyd_indices(const SpaceSpec& space);

// int_1^inf h(1/s) s^{a-1} ds, or +inf when the lower index of the certified bound is <= a. a in [0,1).
double qa_norm_bound(const SpaceSpec& space, double a);
// int_1^inf h(s) s^{-2} ds, or +inf.
double p_norm_bound(const SpaceSpec& space);

struct OperatorNormEstimate {
    double lower = 0.0;
    double upper = kInf;
    StepProfile witness;
};

// Lower bound by maximizing over the test family, upper bound from closed form or the dilation integral.
OperatorNormEstimate operator_norm(const SpaceSpec& space, HardyMode mode, double a = 0.0);
// ||T witness|| / ||witness|| as used by operator_norm
double operator_ratio(const SpaceSpec& space, HardyMode mode, double a, const StepProfile& f);

// int_0^1 ||f* chi_[0,t)||_base dt / (t w(t)^{1-k/2}), w = ln(1/t) or 1 + ln(1/t).
double xklog_norm(const SpaceSpec& base, int k, const StepProfile& profile, WeightVariant variant);
// int_0^1 (int_0^t f*^q)^{1/q} dt / (t (ln 1/t)^{1/2})
double small_lebesgue_norm(double q, const StepProfile& profile);

// sup_{0<u<1} ((1 + ln 1/u) / (1 + ln 1/(u r)))^{1-k/2}: numeric and closed form.
double log_ratio_sup_numeric(int k, double r);
double log_ratio_sup_closed(int k, double r);

}  // namespace dimsob
