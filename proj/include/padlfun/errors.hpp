#ifndef PADLFUN_ERRORS_HPP
#define PADLFUN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace padlfun {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

/// Not enough p-adic (or t-adic) digits left to answer honestly.
struct PrecisionExhausted : Error {
  using Error::Error;
};

/// Evaluation hit a zero of a denominator. `location` is a printable
/// estimate of the offending point.
struct PoleError : Error {
  PoleError(const std::string& what, std::string loc)
      : Error(what), location(std::move(loc)) {}
  std::string location;
};

struct FactorizationIncomplete : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace padlfun

#endif
