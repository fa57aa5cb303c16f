#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcamon {

// All toolkit errors derive from Error so callers can catch one base type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training window cannot identify the autoregressive parameter
// (e.g. all-zero series makes the weighted Gram denominator vanish).
struct DegenerateTraining : Error {
  using Error::Error;
};

// A computation produced NaN or infinity.
struct NonFinite : Error {
  using Error::Error;
};

// The weighted normal-equations matrix is numerically singular.
struct SingularGram : Error {
  using Error::Error;
};

// A covariate scale estimate (a quadratic form) came out nonpositive.
struct DegenerateScales : Error {
  using Error::Error;
};

// Covariate dimensions disagree between fit and data.
struct ArityMismatch : Error {
  using Error::Error;
};

// Step index beyond the closed-scheme horizon m*.
struct OutOfHorizon : Error {
  using Error::Error;
};

// Argument outside a function's mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

// Root finder found no sign change on its bracket.
struct NoRoot : Error {
  using Error::Error;
};

// Monitor configuration violates an invariant.
struct ConfigError : Error {
  using Error::Error;
};

// step() called on an engine already in a terminal state.
struct StepAfterTerminal : Error {
  using Error::Error;
};

// Malformed input file; line is 1-based.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
  std::size_t line;
};

}  // namespace rcamon
