#pragma once

#include <stdexcept>
#include <string>

namespace splitsamp {

// Invalid parameters or misuse of an API (maps to CLI exit code 1).
struct invalid_argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent data: schema mismatches, values outside the
// declared support, empty cells (maps to CLI exit code 2).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sensitive value fell outside the plan's support box.
struct out_of_support_error : data_error {
    out_of_support_error(double value, int dim)
        : data_error("value " + std::to_string(value) +
                     " outside support in dimension " + std::to_string(dim)),
          value(value), dim(dim) {}
    double value;
    int dim;
};

// Numerical failure: rank deficiency, non-convergent quadrature
// (maps to CLI exit code 3).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace splitsamp
