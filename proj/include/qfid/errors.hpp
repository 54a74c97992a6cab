// errors.hpp — Exception types thrown across the library

#pragma once

#include <stdexcept>

namespace qfid {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotTracePreserving : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Signals that the full-space route is infeasible; callers fall back to the
// symmetric-subspace machinery.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteObjective : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LinearlyDependentPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidProbabilities : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotCanonical : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EpsilonOutOfRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qfid
