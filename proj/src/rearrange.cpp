#include "dimsob/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimsob/error.hpp"
#include "dimsob/numeric.hpp"

namespace dimsob {

WeightedSample WeightedSample::make(std::vector<Entry> entries) {
    if (entries.empty()) throw InvalidArgument("invalid sample: empty entry list");
    CompensatedSum total;
    for (const auto& e : entries) {
        if (!std::isfinite(e.value)) throw InvalidArgument("invalid sample: non-finite value");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw InvalidArgument("invalid sample: weight must be positive");
        total += e.weight;
    }
    double s = total.value();
    if (std::fabs(s - 1.0) > 1e-12)
        throw InvalidArgument("invalid sample: weights sum to " + std::to_string(s) + ", not 1");
    if (s != 1.0)
        for (auto& e : entries) e.weight /= s;
    WeightedSample w;
    w.entries_ = std::move(entries);
    return w;
}

WeightedSample WeightedSample::uniform(const std::vector<double>& values) {
    if (values.empty()) throw InvalidArgument("invalid sample: empty entry list");
    std::vector<Entry> e;
    e.reserve(values.size());
    double w = 1.0 / double(values.size());
    for (double v : values) e.push_back({v, w});
    return make(std::move(e));
}

double WeightedSample::distribution(double y) const {
    CompensatedSum s;
    for (const auto& e : entries_)
        if (e.value > y) s += e.weight;
    return s.value();
}

StepProfile::StepProfile() : breaks_{1.0}, values_{0.0} { finish(); }

void StepProfile::finish() {
    prefix_.resize(values_.size());
    CompensatedSum s;
    for (std::size_t j = 0; j < values_.size(); ++j) {
        s += values_[j] * width(j);
        prefix_[j] = s.value();
    }
}

StepProfile StepProfile::make(std::vector<double> b, std::vector<double> v) {
    if (b.empty() || b.size() != v.size()) throw InvalidArgument("profile: breakpoints and values must be non-empty and of equal length");
    if (std::fabs(b.back() - 1.0) > 1e-12) throw InvalidArgument("profile: last breakpoint must equal 1");
    b.back() = 1.0;
    double prev = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!(b[j] > prev) || !std::isfinite(v[j])) throw InvalidArgument("profile: breakpoints must increase strictly in (0,1] and values be finite");
        if (j > 0 && v[j] > v[j - 1]) throw InvalidArgument("profile: values must be non-increasing");
        prev = b[j];
    }
    StepProfile p;
    p.breaks_.clear();
    p.values_.clear();
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!p.values_.empty() && p.values_.back() == v[j])
            p.breaks_.back() = b[j];
        else {
            p.breaks_.push_back(b[j]);
            p.values_.push_back(v[j]);
        }
    }
    p.finish();
    return p;
}

StepProfile StepProfile::constant(double c) { return make({1.0}, {c}); }

StepProfile StepProfile::indicator(double a, double height) {
    if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("indicator: a must lie in (0,1]");
    if (height < 0.0) throw InvalidArgument("indicator: height must be non-negative");
    if (a == 1.0) return constant(height);
    return make({a, 1.0}, {height, 0.0});
}

std::size_t StepProfile::step_index(double s) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    std::size_t j = std::size_t(it - breaks_.begin());
    return std::min(j, values_.size() - 1);
}

double StepProfile::operator()(double s) const { return values_[step_index(s)]; }

double StepProfile::integral(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return prefix_.back();
    std::size_t j = step_index(t);
    double before = j == 0 ? 0.0 : prefix_[j - 1];
    return before + values_[j] * (t - left(j));
}

double StepProfile::distribution(double y) const {
    double m = 0.0;
    for (std::size_t j = 0; j < values_.size() && values_[j] > y; ++j) m = breaks_[j];
    return m;
}

StepProfile StepProfile::shifted(double a) const {
    auto v = values_;
    for (auto& x : v) x += a;
    return make(breaks_, v);
}

StepProfile StepProfile::scaled(double c) const {
    if (c < 0.0) throw InvalidArgument("profile: scale must be non-negative");
    if (c == 0.0) return StepProfile();
    auto v = values_;
    for (auto& x : v) x *= c;
    return make(breaks_, v);
}

StepProfile decreasing_rearrangement(const WeightedSample& sample) {
    auto e = sample.entries();
    std::stable_sort(e.begin(), e.end(), [](const auto& x, const auto& y) { return x.value > y.value; });
    std::vector<double> b, v;
    CompensatedSum cum;
    for (std::size_t i = 0; i < e.size();) {
        double val = e[i].value;
        while (i < e.size() && e[i].value == val) cum += e[i++].weight;
        double c = std::min(cum.value(), 1.0);
        if (i == e.size()) c = 1.0;
        if (!b.empty() && !(c > b.back())) continue;  // step narrower than rounding
        b.push_back(c);
        v.push_back(val);
    }
    if (b.back() != 1.0) b.back() = 1.0;
    return StepProfile::make(std::move(b), std::move(v));
}

StepProfile rearrange_equal_weights(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("invalid sample: empty entry list");
    std::sort(values.begin(), values.end(), std::greater<>());
    const double n = double(values.size());
    std::vector<double> b, v;
    for (std::size_t i = 0; i < values.size();) {
        double val = values[i];
        while (i < values.size() && values[i] == val) ++i;
        b.push_back(double(i) / n);
        v.push_back(val);
    }
    b.back() = 1.0;
    return StepProfile::make(std::move(b), std::move(v));
}

double maximal_average(const StepProfile& profile, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("maximal_average: t must lie in (0,1]");
    return profile.integral(t) / t;
}

double OscillationEvaluator::operator()(double t) const {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("oscillation: t must lie in (0,1]");
    // on step j, f** - f* = c_j / t with c_j = sum_{i<j} (v_i - v_j) |step i| >= 0
    std::size_t j = p_.step_index(t);
    CompensatedSum c;
    for (std::size_t i = 0; i < j; ++i) c += (p_.value(i) - p_.value(j)) * p_.width(i);
    return std::max(0.0, c.value()) / t;
}

OscillationEvaluator oscillation_profile(const StepProfile& profile) { return OscillationEvaluator(profile); }

double median_value(const StepProfile& profile) { return profile(0.5); }

StepProfile restrict(const StepProfile& profile, double t, RestrictMode mode) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("restrict: t must lie in (0,1)");
    std::size_t j = profile.step_index(t);
    double tail = mode == RestrictMode::subtract_tail ? profile.value(j) : 0.0;
    std::vector<double> b, v;
    for (std::size_t i = 0; i < j; ++i) {
        b.push_back(profile.right(i));
        v.push_back(profile.value(i) - tail);
    }
    if (profile.left(j) < t) {
        b.push_back(t);
        v.push_back(profile.value(j) - tail);
    }
    if (!v.empty() && v.back() < 0.0) throw InvalidArgument("restrict: truncate needs f* >= 0 on [0,t)");
    b.push_back(1.0);
    v.push_back(0.0);
    return StepProfile::make(std::move(b), std::move(v));
}

StepProfile coarsen(const StepProfile& profile, std::size_t bins) {
    if (bins == 0) throw InvalidArgument("coarsen: bins must be positive");
    std::vector<double> b(bins), v(bins);
    double prev = profile.integral(0.0);
    for (std::size_t k = 0; k < bins; ++k) {
        double r = k + 1 == bins ? 1.0 : double(k + 1) / double(bins);
        double cur = profile.integral(r);
        double w = r - (k == 0 ? 0.0 : b[k - 1]);
        b[k] = r;
        v[k] = (cur - prev) / w;
        if (k > 0 && v[k] > v[k - 1]) v[k] = v[k - 1];
        prev = cur;
    }
    return StepProfile::make(std::move(b), std::move(v));
}

StepProfile shift_in_measure(const StepProfile& profile, double shift) {
    if (shift == 0.0) return profile;
    std::vector<double> b, v;
    if (shift > 0.0) {
        if (shift >= 1.0) return StepProfile::constant(profile.sup());
        b.push_back(shift);
        v.push_back(profile.sup());
        for (std::size_t j = 0; j < profile.size(); ++j) {
            double r = profile.right(j) + shift;
            if (r >= 1.0) {
                b.push_back(1.0);
                v.push_back(profile.value(j));
                break;
            }
            b.push_back(r);
            v.push_back(profile.value(j));
        }
    } else {
        double s = -shift;
        if (s >= 1.0) return StepProfile::constant(profile.inf());
        for (std::size_t j = 0; j < profile.size(); ++j) {
            double r = profile.right(j) - s;
            if (r <= 0.0) continue;
            b.push_back(r);
            v.push_back(profile.value(j));
            if (r >= 1.0 - s) break;
        }
        b.push_back(1.0);
        v.push_back(profile.inf());
        // drop a duplicate 1 - s == 1 edge case
        std::vector<double> b2, v2;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!b2.empty() && !(b[i] > b2.back())) continue;
            b2.push_back(b[i]);
            v2.push_back(v[i]);
        }
        return StepProfile::make(std::move(b2), std::move(v2));
    }
    return StepProfile::make(std::move(b), std::move(v));
}

}  // namespace dimsob
