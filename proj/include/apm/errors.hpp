#pragma once

#include <stdexcept>
#include <string>

namespace apm {

/// Thrown when an adaptive integral fails to reach the requested tolerance.
/// Carries the best estimate obtained and the estimated error bound.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, double best, double bound)
      : std::runtime_error(what), best_estimate(best), error_bound(bound) {}

  double best_estimate;
  double error_bound;
};

/// Requested operation is not available for the given fading-model variant.
class UnsupportedVariantError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A curve or measure lacks a capability the operation needs
/// (e.g. complex continuation or modulation metadata).
class CapabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A requested moment does not exist for the model parameters.
class DivergentMomentError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed measurement-set file.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace apm
