#include "tfim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tfim/probability.hpp"

namespace tfim {
namespace {

void require_interior_momentum(double k) {
  if (!(k > 0.0 && k < std::numbers::pi)) {
    throw std::invalid_argument("momentum must lie strictly inside (0, pi), got " +
                                std::to_string(k));
  }
}

// Root R = sqrt(1 + g^2 - 2 g cos k) written as |(g - cos k, sin k)|, which
// is nonnegative without clamping.
double mode_root(double k, double g) { return std::hypot(g - std::cos(k), std::sin(k)); }

// g - cos k + R, evaluated without cancellation when g - cos k < 0.
double excited_lead(double k, double g) {
  const double z = g - std::cos(k);
  const double r = mode_root(k, g);
  if (z >= 0.0) return z + r;
  const double s = std::sin(k);
  return s * s / (r - z);
}

// g - cos k - R, evaluated without cancellation when g - cos k > 0.
double ground_lead(double k, double g) {
  const double z = g - std::cos(k);
  const double r = mode_root(k, g);
  if (z <= 0.0) return z - r;
  const double s = std::sin(k);
  return -s * s / (r + z);
}

// Bloch angle of the mode field (g - cos k, sin k); lies in (0, pi).
double bloch_angle(double k, double g) { return std::atan2(std::sin(k), g - std::cos(k)); }

}  // namespace

double Spinor::norm() const noexcept { return std::hypot(up, down); }

std::string_view to_string(ProfileSource source) noexcept {
  switch (source) {
    case ProfileSource::analytic_sudden: return "analytic-sudden";
    case ProfileSource::analytic_critical: return "analytic-critical";
    case ProfileSource::second_order_expansion: return "second-order-expansion";
    case ProfileSource::dynamic: return "dynamic";
  }
  return "unknown";
}

ExcitationProfile::ExcitationProfile(MomentumGrid grid, std::vector<double> probabilities,
                                     ProfileSource source)
    : grid_(std::move(grid)), probabilities_(std::move(probabilities)), source_(source) {
  if (probabilities_.size() != grid_.size()) {
    throw std::invalid_argument("profile length " + std::to_string(probabilities_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
  }
  for (double p : probabilities_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("excitation probability outside [0, 1]: " + std::to_string(p));
    }
  }
}

Spinor ground_state(double k, double g) {
  require_interior_momentum(k);
  const double half = 0.5 * bloch_angle(k, g);
  return {-std::sin(half), std::cos(half)};
}

Spinor excited_state(double k, double g) {
  require_interior_momentum(k);
  const double half = 0.5 * bloch_angle(k, g);
  return {std::cos(half), std::sin(half)};
}

double dispersion(double k, double g) { return 2.0 * mode_root(k, g); }

double sudden_pk(double k, double g_i, double g_f) {
  require_interior_momentum(k);
  if (g_i == g_f) return 0.0;
  const double s = std::sin(k);
  const double s2 = s * s;
  const double a = ground_lead(k, g_i);
  const double f = excited_lead(k, g_f);
  const double overlap = f * a + s2;
  return overlap * overlap / ((s2 + f * f) * (s2 + a * a));
}

double sudden_pk_overlap(double k, double g_i, double g_f) {
  const double amplitude = excited_state(k, g_f).dot(ground_state(k, g_i));
  return amplitude * amplitude;
}

double sudden_pk_critical(double k, double g_f) {
  require_interior_momentum(k);
  const double s = std::sin(k);
  const double f = excited_lead(k, g_f);
  const double sq = std::sin(0.25 * k);
  const double cq = std::cos(0.25 * k);
  // s^2 sin^2(k/4) + cos^2(k/4) f^2 - s sin(k/2) f, written as the square it is.
  const double root = s * sq - cq * f;
  return root * root / (s * s + f * f);
}

// With u = (g - cos k)/R and v = sin k/R, the probability is
// p = (1 - u_f u_i - v_f v_i) / 2. The blocks below are the g_f^0, g_f^1 and
// g_f^2 Taylor coefficients of that expression about g_f = 0, where R_f = 1,
// u_f = -cos k and v_f = sin k.
namespace second_order {

namespace {
struct InitialDirection {
  double c;
  double s;
  double u;
  double v;
};

InitialDirection initial_direction(double k, double g_i) {
  require_interior_momentum(k);
  const double c = std::cos(k);
  const double s = std::sin(k);
  const double r = mode_root(k, g_i);
  return {c, s, (g_i - c) / r, s / r};
}
}  // namespace

double zeroth(double k, double g_i) {
  const auto d = initial_direction(k, g_i);
  return 0.5 * (1.0 + d.c * d.u - d.s * d.v);
}

double first(double k, double g_i) {
  const auto d = initial_direction(k, g_i);
  return -0.5 * (d.s * d.s * d.u + d.s * d.c * d.v);
}

double second(double k, double g_i) {
  const auto d = initial_direction(k, g_i);
  return -0.25 * (3.0 * d.s * d.s * d.c * d.u - d.s * (1.0 - 3.0 * d.c * d.c) * d.v);
}

}  // namespace second_order

double sudden_pk_second_order(double k, double g_i, double g_f) {
  return second_order::zeroth(k, g_i) + g_f * second_order::first(k, g_i) +
         g_f * g_f * second_order::second(k, g_i);
}

ExcitationProfile profile_sudden(const MomentumGrid& grid, double g_i, double g_f) {
  std::vector<double> p;
  p.reserve(grid.size());
  for (double k : grid) p.push_back(clamp_probability(sudden_pk(k, g_i, g_f)));
  return {grid, std::move(p), ProfileSource::analytic_sudden};
}

ExcitationProfile profile_critical(const MomentumGrid& grid, double g_f) {
  std::vector<double> p;
  p.reserve(grid.size());
  for (double k : grid) p.push_back(clamp_probability(sudden_pk_critical(k, g_f)));
  return {grid, std::move(p), ProfileSource::analytic_critical};
}

ExcitationProfile profile_second_order(const MomentumGrid& grid, double g_i, double g_f) {
  std::vector<double> p;
  p.reserve(grid.size());
  // A truncated series can leave [0, 1] far from g_f = 0; it is an
  // approximation, so it is clipped rather than rejected.
  for (double k : grid) p.push_back(std::clamp(sudden_pk_second_order(k, g_i, g_f), 0.0, 1.0));
  return {grid, std::move(p), ProfileSource::second_order_expansion};
}

}  // namespace tfim
