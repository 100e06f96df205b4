#ifndef SYMSPACE_ERRORS_HPP
#define SYMSPACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace symspace {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function, e.g. t <= 0 for a weight on (0,1].
class DomainError : public Error {
 public:
  using Error::Error;
};

// A function specification failed to parse or violates its class invariants.
class InvalidFunction : public Error {
 public:
  using Error::Error;
};

// Two parts of a disjoint sum share support of positive measure.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// The ratio psi/phi is not dominated on the probe grid.
class EmbedOrderError : public Error {
 public:
  using Error::Error;
};

// An Orlicz function failed its convexity/monotonicity checks.
class NonConvex : public Error {
 public:
  using Error::Error;
};

// A value fell outside what the representation can hold.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The hypotheses of a construction are not met.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// Requested family depth exceeds the floating-point exponent budget.
class DepthError : public Error {
 public:
  using Error::Error;
};

}  // namespace symspace

#endif  // SYMSPACE_ERRORS_HPP
