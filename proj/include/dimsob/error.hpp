#pragma once

#include <stdexcept>
#include <string>

namespace dimsob {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: out-of-range parameters, malformed profiles, unknown names.
struct InvalidArgument : Error {
    using Error::Error;
};

// Quadrature did not reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

// Iterative estimate failed: bisection, Boyd fit spread, inconclusive divergence test.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace dimsob
