#include "tfim/dynamics.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfim/errors.hpp"
#include "tfim/parallel.hpp"
#include "tfim/probability.hpp"

namespace tfim {
namespace {

namespace odeint = boost::numeric::odeint;

// (Re up, Re down, Im up, Im down)
using State = std::array<double, 4>;

// i d/dt (a + i b) = H (a + i b)  =>  a' = H b,  b' = -H a, with H real
// symmetric and parameterised by the field at time t.
struct ModeSystem {
  ModeHamiltonian hamiltonian;
  QuenchProtocol protocol;
  double cos_k;

  void operator()(const State& x, State& dxdt, double t) const {
    const double g = std::min(protocol.g_initial() + t / protocol.tau_q(), protocol.g_final());
    const double hz = hamiltonian.energy_scale * (g - cos_k);
    const double hx = hamiltonian.energy_scale * hamiltonian.x_coeff();
    dxdt[0] = hz * x[2] + hx * x[3];
    dxdt[1] = hx * x[2] - hz * x[3];
    dxdt[2] = -(hz * x[0] + hx * x[1]);
    dxdt[3] = -(hx * x[0] - hz * x[1]);
  }
};

double norm_squared(const State& x) {
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
}

}  // namespace

void EvolutionSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("integrator tolerances must be positive");
  }
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (!(energy_scale > 0.0) || !std::isfinite(energy_scale)) {
    throw std::invalid_argument("energy_scale must be positive and finite");
  }
}

ModeEvolution evolve_mode(double k, const QuenchProtocol& protocol,
                          const EvolutionSettings& settings) {
  settings.validate();
  if (protocol.is_sudden()) {
    throw SuddenProtocolError("evolve_mode needs tau_q > 0; use sudden_pk for tau_q = 0");
  }
  const Spinor initial = ground_state(k, protocol.g_initial());
  State x = {initial.up, initial.down, 0.0, 0.0};

  ModeEvolution result;
  const double t_final = protocol.duration();
  if (t_final > 0.0) {
    const ModeSystem system{ModeHamiltonian{k, settings.energy_scale}, protocol, std::cos(k)};
    auto stepper = odeint::make_controlled(settings.abs_tol, settings.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    const double scale = settings.energy_scale * std::max(1.0, std::abs(protocol.g_initial()) + 2.0);
    double t = 0.0;
    double dt = std::min(t_final, 1e-2 / scale);
    const double min_dt = 1e-15 * std::max(1.0, t_final);

    while (t < t_final) {
      if (result.accepted_steps + result.rejected_steps >= settings.max_steps) {
        throw IntegrationError("mode integrator exceeded max_steps=" +
                                   std::to_string(settings.max_steps) + " at t=" +
                                   std::to_string(t) + " of " + std::to_string(t_final),
                               t, t_final, result.accepted_steps);
      }
      const bool last = t + dt >= t_final;
      if (last) dt = t_final - t;
      if (stepper.try_step(system, x, t, dt) == odeint::success) {
        ++result.accepted_steps;
        if (last) t = t_final;
        result.max_norm_drift = std::max(result.max_norm_drift, std::abs(norm_squared(x) - 1.0));
      } else {
        ++result.rejected_steps;
        if (dt < min_dt) {
          throw IntegrationError("mode integrator step size underflow at t=" +
                                     std::to_string(t) + " (dt=" + std::to_string(dt) + ")",
                                 t, t_final, result.accepted_steps);
        }
      }
    }
  }
  result.state = {{x[0], x[2]}, {x[1], x[3]}};
  return result;
}

double transition_probability(double k, const QuenchProtocol& protocol,
                              const EvolutionSettings& settings) {
  const ModeEvolution evolved = evolve_mode(k, protocol, settings);
  const Spinor excited = excited_state(k, protocol.g_final());
  const std::complex<double> amplitude = excited.up * evolved.state.up +
                                         excited.down * evolved.state.down;
  return clamp_probability(std::norm(amplitude));
}

ExcitationProfile profile_dynamic(const MomentumGrid& grid, const QuenchProtocol& protocol,
                                  const EvolutionSettings& settings) {
  settings.validate();
  if (protocol.is_sudden()) {
    throw SuddenProtocolError("profile_dynamic needs tau_q > 0; use profile_sudden");
  }
  std::vector<double> p(grid.size());
  parallel_for(grid.size(), settings.threads,
               [&](std::size_t i) { p[i] = transition_probability(grid[i], protocol, settings); });

  if (protocol.tau_q() < kSuddenWarningTau) {
    double deviation = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      deviation = std::max(
          deviation, std::abs(p[i] - sudden_pk(grid[i], protocol.g_initial(), protocol.g_final())));
    }
    std::clog << "warning: tau_q=" << protocol.tau_q()
              << " is deep in the sudden regime; max |p_dynamic - p_sudden| = " << deviation
              << '\n';
  }
  return {grid, std::move(p), ProfileSource::dynamic};
}

ExcitationProfile profile_for(const MomentumGrid& grid, const QuenchProtocol& protocol,
                              const EvolutionSettings& settings) {
  if (protocol.is_sudden()) {
    return profile_sudden(grid, protocol.g_initial(), protocol.g_final());
  }
  return profile_dynamic(grid, protocol, settings);
}

}  // namespace tfim
