#pragma once

#include <stdexcept>
#include <string>

namespace tdopt {

// Shape or bounds violation: mismatched column lengths, out-of-range indices,
// malformed generator specs.
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Merge plan reuses a column index.
struct PlanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Problem size exceeds a hard limit (dense-unitary qubit cap, exhaustive
// search column cap).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that is syntactically fine but carries no usable signal, e.g. an
// all-zero score vector that cannot be normalized.
struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Circuit document rejected; message carries the offending location.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tdopt
