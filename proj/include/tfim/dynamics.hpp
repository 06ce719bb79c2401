#pragma once

#include <complex>
#include <cstddef>

#include "tfim/model.hpp"
#include "tfim/spectral.hpp"

namespace tfim {

struct EvolutionSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 10'000'000;
  /// Factor multiplying the mode matrix; see kDefaultEnergyScale.
  double energy_scale = kDefaultEnergyScale;
  /// Worker threads for per-mode loops; 0 selects the hardware concurrency.
  unsigned threads = 0;

  /// Throws std::invalid_argument on nonpositive tolerances, scale or steps.
  void validate() const;
};

/// Below this quench time profile_dynamic also compares with the sudden overlap
/// and reports the deviation on std::clog.
inline constexpr double kSuddenWarningTau = 1e-3;

struct ModeState {
  std::complex<double> up;
  std::complex<double> down;

  double norm_squared() const noexcept { return std::norm(up) + std::norm(down); }
};

struct ModeEvolution {
  ModeState state;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  /// max over accepted steps of | |psi|^2 - 1 |.
  double max_norm_drift = 0.0;
};

/// Integrates i d/dt psi = H_k(g(t)) psi over the ramp, starting from the
/// exact ground state at g_initial. Throws SuddenProtocolError for tau_q = 0
/// and IntegrationError when the step size underflows or max_steps is hit.
ModeEvolution evolve_mode(double k, const QuenchProtocol& protocol,
                          const EvolutionSettings& settings = {});

/// |<ES_k(g_final)|psi_final>|^2, clamped after the overshoot check.
double transition_probability(double k, const QuenchProtocol& protocol,
                              const EvolutionSettings& settings = {});

/// Elementwise transition_probability in grid order; independent of threads.
ExcitationProfile profile_dynamic(const MomentumGrid& grid, const QuenchProtocol& protocol,
                                  const EvolutionSettings& settings = {});

/// profile_dynamic for ramps, profile_sudden for tau_q = 0.
ExcitationProfile profile_for(const MomentumGrid& grid, const QuenchProtocol& protocol,
                              const EvolutionSettings& settings = {});

}  // namespace tfim
