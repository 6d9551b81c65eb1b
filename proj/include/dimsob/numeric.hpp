#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace dimsob {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// ln of the volume of the unit ball in R^n: pi^{n/2} / Gamma(1 + n/2).
double log_ball_volume(int n);

// ln of the surface area of the unit sphere S^n in R^{n+1}: 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double log_sphere_area(int n);

// x^p for x >= 0 with fast paths for the exponents used most often.
inline double pow_fast(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    if (p == 1.5) return x * std::sqrt(x);
    if (p == 4.0) {
        double y = x * x;
        return y * y;
    }
    return std::pow(x, p);
}

// (b^a - c^a)/a for 0 < c <= b, with the a -> 0 limit ln(b/c).
inline double power_difference(double c, double b, double a) {
    if (c == b) return 0.0;
    double L = std::log(b / c);
    if (a == 0.0) return L;
    return std::pow(c, a) * std::expm1(a * L) / a;
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-11,
                     unsigned max_depth = 15);

// Sum of integrate() over consecutive panels given by sorted break points.
QuadResult integrate_panels(const std::function<double(double)>& f, const std::vector<double>& breaks,
                            double rel_tol = 1e-11, unsigned max_depth = 15);

// Throws QuadratureError when err exceeds rel_tol * |value| + abs_floor.
void require_accuracy(const QuadResult& r, double rel_tol, const char* what, double abs_floor = 0.0);

// Golden-section refinement of a maximum of f on [a, b] starting from a bracketing grid.
struct Maximum {
    double x = 0.0;
    double value = -kInf;
};
Maximum maximize_on_grid(const std::function<double(double)>& f, double a, double b, int grid, int refine_iters = 80);

}  // namespace dimsob
