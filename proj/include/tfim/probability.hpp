#pragma once

namespace tfim {

/// Largest excursion outside [0, 1] tolerated as rounding before clamping.
inline constexpr double kProbabilityOvershoot = 1e-9;

/// Clamps p to [0, 1]. Throws std::domain_error when p lies further than
/// kProbabilityOvershoot outside the interval or is not finite.
double clamp_probability(double p);

}  // namespace tfim
