#pragma once

#include <stdexcept>
#include <string>

namespace l1fract {

/// Invalid argument or state outside the documented domain of an operation.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A requested accuracy cannot be reached; carries the achievable bound.
struct precision_error : std::runtime_error {
    double bound;
    precision_error(const std::string& msg, double achievable)
        : std::runtime_error(msg), bound(achievable) {}
};

/// A linear solve failed (singular or numerically unusable matrix).
struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iteration hit its cap without meeting the tolerance.
struct nonconvergence_error : std::runtime_error {
    double last_change;
    int iterations;
    nonconvergence_error(const std::string& msg, double change, int iters)
        : std::runtime_error(msg), last_change(change), iterations(iters) {}
};

/// Invalid experiment/CLI configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting results.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace l1fract
