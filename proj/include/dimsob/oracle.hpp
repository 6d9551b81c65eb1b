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

// Node values on the uniform grid i/m of [0,1]; the piecewise-linear interpolant is implied.
struct GridFunction1D {
    std::vector<double> values;

    static GridFunction1D make(std::vector<double> values);
    static GridFunction1D sample(const std::function<double(double)>& f, std::size_t m);
    std::size_t m() const { return values.size() - 1; }
    double range() const;
};

// Cell values on an m x m grid of the unit square, row-major (row = y index).
struct GridFunction2D {
    std::size_t m = 0;
    std::vector<double> values;

    static GridFunction2D make(std::size_t m, std::vector<double> values);
    static GridFunction2D sample(const std::function<double(double, double)>& f, std::size_t m);
    double at(std::size_t i, std::size_t j) const { return values[j * m + i]; }
    double range() const;
};

// Continuous piecewise-linear non-increasing function through (s[k], v[k]), s[0] = 0, s.back() = 1.
struct PiecewiseLinearProfile {
    std::vector<double> s;
    std::vector<double> v;

    double operator()(double t) const;
    // int_0^t, exact
    double integral(double t) const;
    // Each segment cut into `pieces` steps carrying the left value; sup error <= range / pieces.
    StepProfile to_step(std::size_t pieces = 16) const;
    // |slope| on each segment, rearranged; exact (-f*)' as a step profile.
    StepProfile derivative_rearranged() const;
};

PiecewiseLinearProfile exact_rearrangement_pl(const GridFunction1D& f);

// Exact |f'| of the interpolant, one value per cell, rearranged.
StepProfile gradient_rearranged(const GridFunction1D& f);
// Central differences (one-sided at the edges), rearranged.
StepProfile gradient_rearranged(const GridFunction2D& f);

// 10 range / m
double oracle_slack(double range, std::size_t m);

// (f** - f*)(t) I(t)/t <= (1/t) int_0^t |grad f|* at each t of tgrid.
VerificationReport check_oscillation(const GridFunction1D& f, const ProfileSpec& spec, const std::vector<double>& tgrid);
VerificationReport check_oscillation(const GridFunction2D& f, const ProfileSpec& spec, const std::vector<double>& tgrid);
// int_0^t ((-f*)')*(s) ds <= int_0^t |f'|*(s) ds with I = 1.
VerificationReport check_polya_szego(const GridFunction1D& f, const std::vector<double>& tgrid);

// Brute-force midpoint / Stieltjes sums on a uniform grid of `resolution` cells (>= 1000).
double riemann_norm_oracle(const SpaceSpec& space, const StepProfile& profile, std::size_t resolution);

// Cells of an m x m grid on the unit square; true marks membership.
struct CellMask {
    std::size_t m = 0;
    std::vector<unsigned char> cells;  // row-major, row = y index

    static CellMask make(std::size_t m, std::vector<unsigned char> cells);
    static CellMask from_predicate(std::size_t m, const std::function<bool(double, double)>& inside);
    bool at(std::size_t i, std::size_t j) const { return cells[j * m + i] != 0; }
};

// mu(A_h) for A_h = {x in (0,1)^2 : d(x, A) < h}
double neighbourhood_area(const CellMask& mask, double h);
// (mu(A_h) - mu(A))/h at each h (decreasing), extrapolated to h = 0 by a least-squares fit in {1, h, 1/h}
// ({1, h} for two values). Needs 1/m << h.
double perimeter_grid(const CellMask& mask, const std::vector<double>& h_list);

struct OracleSuiteResult {
    std::string suite;
    int passed = 0;
    int total = 0;
    std::vector<VerificationReport> reports;
};

// "1d": oscillation + Polya-Szego on random piecewise-linear functions;
// "2d": oscillation with the Gaussian estimator on random smooth grid functions;
// "norms": ri_norm against riemann_norm_oracle on random profiles and spaces.
OracleSuiteResult run_oracle_suite(const std::string& suite, int trials, std::uint64_t seed, unsigned jobs = 1);

// Random piecewise-linear grid function of the 1-D corpus (deterministic in seed and index).
GridFunction1D random_grid_function(std::uint64_t seed, std::uint64_t index, std::size_t m = 100);
// Random decreasing profile with up to max_steps steps and values in (0, 2].
StepProfile random_profile(std::uint64_t seed, std::uint64_t index, std::size_t max_steps = 12);
// The 20-point t-grid used by the suites.
std::vector<double> suite_tgrid(double t_max = 1.0);

}  // namespace dimsob
