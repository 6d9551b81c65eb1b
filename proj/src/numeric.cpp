#include "dimsob/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cstdio>
#include <queue>
#include <string>

#include "dimsob/error.hpp"

namespace dimsob {

double log_ball_volume(int n) {
    return 0.5 * n * std::log(kPi) - std::lgamma(1.0 + 0.5 * n);
}

double log_sphere_area(int n) {
    return std::log(2.0) + 0.5 * (n + 1) * std::log(kPi) - std::lgamma(0.5 * (n + 1));
}

namespace {

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk_segment(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    // with zero depth boost returns the error of the rule mapped to [-1, 1]
    return {a, b, v, err * 0.5 * (b - a)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, unsigned max_depth) {
    QuadResult r;
    if (!(b > a)) return r;
    std::function<double(double)> g = f;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        g = [&f, a](double u) {
            double w = 1.0 - u;
            return f(a + u / w) / (w * w);
        };
        lo = 0.0;
        hi = 1.0;
    }
    std::priority_queue<Segment> heap;
    heap.push(gk_segment(g, lo, hi));
    double total = heap.top().value, err = heap.top().error;
    const std::size_t max_segments = std::size_t(1) << std::min(max_depth, 12u);
    while (heap.size() < max_segments && err > rel_tol * std::fabs(total) && err > 1e-300) {
        Segment s = heap.top();
        heap.pop();
        double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b)) {
            heap.push(s);
            break;
        }
        Segment l = gk_segment(g, s.a, mid), rr = gk_segment(g, mid, s.b);
        total += l.value + rr.value - s.value;
        err += l.error + rr.error - s.error;
        heap.push(l);
        heap.push(rr);
    }
    CompensatedSum v, e;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    r.value = v.value();
    r.error = e.value();
    if (!std::isfinite(r.value)) r.error = kInf;
    return r;
}

QuadResult integrate_panels(const std::function<double(double)>& f, const std::vector<double>& breaks, double rel_tol,
                            unsigned max_depth) {
    CompensatedSum v, e;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto q = integrate(f, breaks[i], breaks[i + 1], rel_tol, max_depth);
        v += q.value;
        e += q.error;
    }
    return {v.value(), e.value()};
}

void require_accuracy(const QuadResult& r, double rel_tol, const char* what, double abs_floor) {
    if (!std::isfinite(r.value) || r.error > rel_tol * std::fabs(r.value) + std::max(abs_floor, 1e-300))
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (value %.6g, error %.3g)", r.value, r.error);
        throw QuadratureError(std::string(what) + ": quadrature did not reach tolerance" + buf);
    }
}

Maximum maximize_on_grid(const std::function<double(double)>& f, double a, double b, int grid, int refine_iters) {
    Maximum best;
    int ib = 0;
    std::vector<double> xs(grid + 1), fs(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        xs[i] = a + (b - a) * i / grid;
        fs[i] = f(xs[i]);
        if (fs[i] > best.value) {
            best = {xs[i], fs[i]};
            ib = i;
        }
    }
    double lo = xs[std::max(ib - 1, 0)], hi = xs[std::min(ib + 1, grid)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < refine_iters; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if (f1 > best.value) best = {x1, f1};
    if (f2 > best.value) best = {x2, f2};
    return best;
}

}  // namespace dimsob
