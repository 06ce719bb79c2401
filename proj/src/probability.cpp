#include "tfim/probability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tfim {

double clamp_probability(double p) {
  if (!std::isfinite(p) || p < -kProbabilityOvershoot || p > 1.0 + kProbabilityOvershoot) {
    throw std::domain_error("probability overshoot beyond rounding tolerance: " +
                            std::to_string(p));
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace tfim
