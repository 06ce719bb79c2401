#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tfim/model.hpp"

namespace tfim {

/// Real two-component eigenvector of a single-mode matrix.
struct Spinor {
  double up;
  double down;

  double dot(const Spinor& other) const noexcept { return up * other.up + down * other.down; }
  double norm() const noexcept;
};

enum class ProfileSource { analytic_sudden, analytic_critical, second_order_expansion, dynamic };

std::string_view to_string(ProfileSource source) noexcept;

/// Per-mode excitation probabilities on a momentum grid.
class ExcitationProfile {
 public:
  /// Throws std::invalid_argument when sizes differ or a value leaves [0, 1].
  ExcitationProfile(MomentumGrid grid, std::vector<double> probabilities, ProfileSource source);

  const MomentumGrid& grid() const noexcept { return grid_; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }
  ProfileSource source() const noexcept { return source_; }
  std::size_t size() const noexcept { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }

 private:
  MomentumGrid grid_;
  std::vector<double> probabilities_;
  ProfileSource source_;
};

// All functions below require k in (0, pi) and throw std::invalid_argument
// otherwise: at k = 0 or pi the mode matrix is diagonal and the closed-form
// eigenvectors degenerate.

/// Lower-eigenvalue eigenvector, proportional to (g - cos k - R, sin k) with
/// R = sqrt(1 + g^2 - 2 g cos k).
Spinor ground_state(double k, double g);

/// Upper-eigenvalue eigenvector, proportional to (g - cos k + R, sin k).
Spinor excited_state(double k, double g);

/// 2 sqrt(1 + g^2 - 2 g cos k). Defined on the closed interval [0, pi].
double dispersion(double k, double g);

/// |<ES_k(g_f)|GS_k(g_i)>|^2 from the explicit rational formula.
double sudden_pk(double k, double g_i, double g_f);

/// Same probability from the inner product of ground_state and excited_state.
double sudden_pk_overlap(double k, double g_i, double g_f);

/// Closed form for quenches starting exactly at the critical point g_i = -1.
double sudden_pk_critical(double k, double g_f);

/// Taylor expansion of sudden_pk in g_f about g_f = 0, to second order.
/// Accuracy degrades as g_f approaches -1; no error is raised.
namespace second_order {
double zeroth(double k, double g_i);
double first(double k, double g_i);
double second(double k, double g_i);
}  // namespace second_order

double sudden_pk_second_order(double k, double g_i, double g_f);

ExcitationProfile profile_sudden(const MomentumGrid& grid, double g_i, double g_f);
ExcitationProfile profile_critical(const MomentumGrid& grid, double g_f);
ExcitationProfile profile_second_order(const MomentumGrid& grid, double g_i, double g_f);

}  // namespace tfim
