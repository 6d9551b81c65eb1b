#pragma once

#include <cstddef>
#include <vector>

namespace dimsob {

// A function on a probability space, seen through its distribution.
class WeightedSample {
public:
    struct Entry {
        double value;
        double weight;
    };

    // Weights must be positive and sum to 1 within 1e-12; they are renormalized otherwise rejected.
    static WeightedSample make(std::vector<Entry> entries);
    // Equal weights 1/N.
    static WeightedSample uniform(const std::vector<double>& values);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    // Total weight of entries with value > y.
    double distribution(double y) const;

private:
    std::vector<Entry> entries_;
};

// Right-continuous non-increasing step function on [0,1).
// Step j (0-based) is [left(j), right(j)) with value value(j); right(size()-1) == 1.
class StepProfile {
public:
    StepProfile();  // zero profile

    // Breakpoints strictly increasing in (0,1] ending at 1; values non-increasing. Equal neighbours merge.
    static StepProfile make(std::vector<double> breakpoints, std::vector<double> values);
    static StepProfile constant(double c);
    // height on [0,a), 0 on [a,1)
    static StepProfile indicator(double a, double height = 1.0);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }
    double left(std::size_t j) const { return j == 0 ? 0.0 : breaks_[j - 1]; }
    double right(std::size_t j) const { return breaks_[j]; }
    double value(std::size_t j) const { return values_[j]; }
    double width(std::size_t j) const { return breaks_[j] - left(j); }

    // Index of the step containing s; s >= 1 maps to the last step.
    std::size_t step_index(double s) const;
    // f*(s); for s >= 1 the last value.
    double operator()(double s) const;
    // int_0^t f*(s) ds, exact.
    double integral(double t) const;
    // int_0^{right(j)} f*, cached prefix sums.
    double prefix_integral(std::size_t j) const { return prefix_[j]; }
    // Lebesgue measure of {s : f*(s) > y}.
    double distribution(double y) const;

    double sup() const { return values_.front(); }
    double inf() const { return values_.back(); }
    bool nonnegative() const { return values_.back() >= 0.0; }
    bool is_zero() const { return values_.size() == 1 && values_[0] == 0.0; }

    StepProfile shifted(double a) const;
    StepProfile scaled(double c) const;

    bool operator==(const StepProfile& o) const { return breaks_ == o.breaks_ && values_ == o.values_; }

private:
    std::vector<double> breaks_;
    std::vector<double> values_;
    std::vector<double> prefix_;
    void finish();
};

StepProfile decreasing_rearrangement(const WeightedSample& sample);
// Rearrangement of N equally weighted values.
StepProfile rearrange_equal_weights(std::vector<double> values);

// u**(t) = (1/t) int_0^t u*.
double maximal_average(const StepProfile& profile, double t);

class OscillationEvaluator {
public:
    explicit OscillationEvaluator(StepProfile p) : p_(std::move(p)) {}
    // u**(t) - u*(t), t in (0,1]
    double operator()(double t) const;
    const StepProfile& profile() const { return p_; }

private:
    StepProfile p_;
};

OscillationEvaluator oscillation_profile(const StepProfile& profile);

// f*(1/2)
double median_value(const StepProfile& profile);

enum class RestrictMode { truncate, subtract_tail };

// truncate: f* chi_[0,t); subtract_tail: (f* - f*(t)) chi_[0,t). t in (0,1).
StepProfile restrict(const StepProfile& profile, double t, RestrictMode mode);

// Average over K equal-measure bins.
StepProfile coarsen(const StepProfile& profile, std::size_t bins);

// s -> f*(s - shift) for shift > 0 (values pushed right, f*(0) fills [0,shift)),
// s -> f*(s + |shift|) for shift < 0 (inf fills the tail).
StepProfile shift_in_measure(const StepProfile& profile, double shift);

}  // namespace dimsob
