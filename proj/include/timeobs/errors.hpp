#pragma once

#include <stdexcept>
#include <string>

namespace timeobs {

// Base class for all library errors; everything thrown here derives from it
// so callers can catch timeobs::Error and map it to an exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature ran out of evaluation budget before reaching the tolerance.
// Carries the best estimate so diagnostics can still report a value.
struct NonConvergence : Error {
  double best_estimate;
  double error_estimate;
  NonConvergence(const std::string& msg, double best, double err)
      : Error(msg), best_estimate(best), error_estimate(err) {}
};

// The integrand returned NaN or +-inf at a sample point.
struct NonFiniteSample : Error {
  using Error::Error;
};

// A closed-form path was asked for an infinite interval it cannot represent.
struct UnboundedInterval : Error {
  using Error::Error;
};

// The state fails the finiteness condition: the profile does not vanish at
// the zero of the group velocity, so the time-integrated weight diverges.
struct NotInLeftIdeal : Error {
  using Error::Error;
};

// Conditional probability requested with a (numerically) zero denominator.
struct ZeroCondition : Error {
  using Error::Error;
};

// An inverse-velocity-weighted integral diverges for this profile.
struct SingularWeight : Error {
  using Error::Error;
};

// A bilinear form that must be real came back with a large imaginary part.
struct HermiticityViolation : Error {
  using Error::Error;
};

// A manifestly nonnegative quantity came back negative beyond tolerance.
struct NegativeValue : Error {
  using Error::Error;
};

// Function evaluated outside its domain (e.g. p <= 0 in log coordinates).
struct DomainError : Error {
  using Error::Error;
};

// Bad CLI / JSON configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace timeobs
