#pragma once

#include <stdexcept>
#include <string>

namespace ranpart {

// Bad arguments or domain violations (wrong sizes, invalid parameters).
// The CLI maps these to exit code 2.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured resource limit (enumeration size, tuple count, ...) was hit.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric trouble: non-convergence, poles, branch-tracking failures.
// The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace ranpart
