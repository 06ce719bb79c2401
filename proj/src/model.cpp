#include "tfim/model.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

MomentumGrid::MomentumGrid(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw std::invalid_argument("momentum grid needs an even number of sites >= 2, got " +
                                std::to_string(n_sites));
  }
  const auto modes = static_cast<std::size_t>(n_sites / 2);
  momenta_.reserve(modes);
  for (std::size_t m = 1; m <= modes; ++m) {
    momenta_.push_back(static_cast<double>(2 * m - 1) * std::numbers::pi / n_sites);
  }
}

MomentumGrid build_grid(int n_sites) { return MomentumGrid(n_sites); }

QuenchProtocol::QuenchProtocol(double g_initial, double g_final, double tau_q)
    : g_initial_(g_initial), g_final_(g_final), tau_q_(tau_q) {
  if (!std::isfinite(g_initial) || !std::isfinite(g_final) || !std::isfinite(tau_q)) {
    throw std::invalid_argument("quench protocol parameters must be finite");
  }
  if (tau_q < 0.0) {
    throw std::invalid_argument("tau_q must be nonnegative");
  }
  // g_final == g_initial is the zero-depth quench; it has zero duration.
  if (g_final < g_initial) {
    throw std::invalid_argument("ramp must go upward: g_final >= g_initial");
  }
}

double field_at(const QuenchProtocol& protocol, double t) {
  if (protocol.is_sudden()) {
    throw SuddenProtocolError("sudden protocol has no ramp; use the analytic overlap path");
  }
  const double duration = protocol.duration();
  if (!(t >= 0.0 && t <= duration)) {
    throw std::invalid_argument("time " + std::to_string(t) + " outside ramp window [0, " +
                                std::to_string(duration) + "]");
  }
  if (t == duration) return protocol.g_final();
  return protocol.g_initial() + t / protocol.tau_q();
}

}  // namespace tfim
