/**
 * @file errors.hpp
 * @brief Exception types thrown by the fmclp library.
 */

#ifndef FMCLP_ERRORS_HPP
#define FMCLP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fmclp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Triplet or interval endpoints out of order (lo > mid or mid > hi).
struct OrderViolation : Error {
  using Error::Error;
};

/// Argument outside its admissible domain (alpha, spread, radius, ...).
struct DomainViolation : Error {
  using Error::Error;
};

/// Operation requires nonnegative operands.
struct NegativityViolation : Error {
  using Error::Error;
};

/// Malformed input stream; carries the 1-based line number.
struct ParseError : Error {
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// Instance with no demand points.
struct EmptyInstance : Error {
  using Error::Error;
};

/// Budget mode incompatible with the instance costs.
struct ModeMismatch : Error {
  using Error::Error;
};

/// Facility index outside the instance.
struct UnknownFacility : Error {
  using Error::Error;
};

/// Candidate handed to the Pareto test violates budgets or coverage.
struct InfeasibleCandidate : Error {
  using Error::Error;
};

/// Algorithm 1 invoked without weight vectors.
struct EmptyWeightSet : Error {
  using Error::Error;
};

/// Exhaustive enumeration request above the configured facility cap.
struct TooLarge : Error {
  using Error::Error;
};

}  // namespace fmclp

#endif  // FMCLP_ERRORS_HPP
