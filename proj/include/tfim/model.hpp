#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace tfim {

/// Critical transverse field approached by every protocol (g_c = -1).
inline constexpr double kCriticalField = -1.0;

/// Overall factor multiplying the single-mode matrix during time evolution.
/// With 2, the evolution generator has eigenvalues +-dispersion(k, g).
inline constexpr double kDefaultEnergyScale = 2.0;

/// Positive quantized momenta k_m = (2m - 1) pi / N, m = 1..N/2, of a
/// periodic chain with an even number of sites N.
class MomentumGrid {
 public:
  explicit MomentumGrid(int n_sites);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t size() const noexcept { return momenta_.size(); }
  std::span<const double> momenta() const noexcept { return momenta_; }
  double operator[](std::size_t i) const { return momenta_[i]; }

  auto begin() const noexcept { return momenta_.begin(); }
  auto end() const noexcept { return momenta_.end(); }

 private:
  int n_sites_;
  std::vector<double> momenta_;
};

/// Throws std::invalid_argument for odd or nonpositive n_sites.
MomentumGrid build_grid(int n_sites);

/// Linear ramp g(t) = g_initial + t / tau_q from g_initial up to g_final.
/// tau_q = 0 is the sudden quench. The duration is always derived.
class QuenchProtocol {
 public:
  QuenchProtocol(double g_initial, double g_final, double tau_q);

  static QuenchProtocol sudden(double g_initial, double g_final) {
    return QuenchProtocol(g_initial, g_final, 0.0);
  }

  double g_initial() const noexcept { return g_initial_; }
  double g_final() const noexcept { return g_final_; }
  double tau_q() const noexcept { return tau_q_; }
  bool is_sudden() const noexcept { return tau_q_ == 0.0; }
  double duration() const noexcept { return (g_final_ - g_initial_) * tau_q_; }
  /// Quench depth measured from the critical point.
  double epsilon_final() const noexcept { return g_final_ - kCriticalField; }

 private:
  double g_initial_;
  double g_final_;
  double tau_q_;
};

/// Field at time t of the ramp. Throws SuddenProtocolError for tau_q = 0 and
/// std::invalid_argument for t outside [0, duration].
double field_at(const QuenchProtocol& protocol, double t);

/// Single-mode matrix energy_scale * [(g - cos k) sigma^z + sin k sigma^x].
struct ModeHamiltonian {
  double k;
  double energy_scale = kDefaultEnergyScale;

  double z_coeff(double g) const noexcept { return g - std::cos(k); }
  double x_coeff() const noexcept { return std::sin(k); }

  /// Upper eigenvalue of the scaled matrix.
  double half_gap(double g) const noexcept {
    return energy_scale * std::hypot(z_coeff(g), x_coeff());
  }
};

}  // namespace tfim
