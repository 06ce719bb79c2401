#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfim {

// Invalid arguments are reported with std::invalid_argument and domain
// violations of closed forms with std::domain_error. The types below cover
// the remaining failure modes.

/// A ramp-only operation was asked to handle a tau_q = 0 protocol.
class SuddenProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The mode integrator could not reach the end of the ramp.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t_reached, double t_final,
                   std::size_t steps)
      : std::runtime_error(what),
        t_reached_(t_reached),
        t_final_(t_final),
        steps_(steps) {}

  double t_reached() const noexcept { return t_reached_; }
  double t_final() const noexcept { return t_final_; }
  std::size_t steps() const noexcept { return steps_; }

 private:
  double t_reached_;
  double t_final_;
  std::size_t steps_;
};

/// A conversion was applied to a value already in the target convention.
class InvalidStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A cumulant ratio was requested with kappa1 = 0.
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Too few usable points for a fit.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sweep does not cover the regimes an estimator needs.
class InsufficientRangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tfim
