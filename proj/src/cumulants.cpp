#include "tfim/cumulants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tfim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArgumentSlack = 1e-12;

void require_sudden_domain(double g_f) {
  if (!(g_f >= -1.0 && g_f <= 0.0)) {
    throw std::domain_error("closed-form cumulants are valid for g_f in [-1, 0], got " +
                            std::to_string(g_f));
  }
}

void require_series_args(double eps_f, int order) {
  if (order < 1 || order > 5) {
    throw std::invalid_argument("series order must be 1..5, got " + std::to_string(order));
  }
  if (!(eps_f >= 0.0 && eps_f <= 1.0)) {
    throw std::invalid_argument("quench depth must lie in [0, 1], got " + std::to_string(eps_f));
  }
}

// Inverse trig arguments that may only leave [-1, 1] through rounding.
double clamp_unit(double value, const char* what) {
  if (value > 1.0 + kArgumentSlack || value < -1.0 - kArgumentSlack) {
    throw std::domain_error(std::string(what) + " argument outside [-1, 1]: " +
                            std::to_string(value));
  }
  return std::fmin(1.0, std::fmax(-1.0, value));
}

template <std::size_t N>
double horner(const std::array<double, N>& coeffs, double x, std::size_t terms = N) {
  double acc = 0.0;
  for (std::size_t i = terms; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

// arcsin(2 sqrt(-g) / (1 - g)) / sqrt(-g), shared by kappa1 and kappa3.
double arcsin_ratio(double g_f) {
  const double x = -g_f;
  const double root = std::sqrt(x);
  return std::asin(clamp_unit(2.0 * root / (1.0 - g_f), "arcsin")) / root;
}

}  // namespace

std::string_view to_string(Convention convention) noexcept {
  return convention == Convention::pairs ? "pairs" : "kinks";
}

double kappa1_exact(double L, double g_f) {
  require_sudden_domain(g_f);
  if (-g_f < kSingularSwitch) {
    return L / (2.0 * kPi) * horner(series::kappa1_field, g_f);
  }
  return L / 4.0 - L / (4.0 * kPi) * (1.0 - g_f) * arcsin_ratio(g_f);
}

double kappa2_exact(double L, double g_f) { return L / 16.0 * (1.0 + g_f); }

double kappa3_exact(double L, double g_f) {
  require_sudden_domain(g_f);
  if (-g_f < kSingularSwitch) {
    return L / (8.0 * kPi) * horner(series::kappa3_field, g_f);
  }
  const double x = -g_f;
  const double one_minus = 1.0 - g_f;
  const double angle = std::acos(
      clamp_unit((g_f * g_f + 6.0 * g_f + 1.0) / (one_minus * one_minus), "arccos"));
  const double first = L / (8.0 * kPi) * one_minus * arcsin_ratio(g_f);
  const double second = L / (64.0 * kPi) *
                        (angle / std::sqrt(x * x * x) * std::pow(g_f - 1.0, 3) -
                         4.0 * (1.0 - g_f * g_f) / g_f);
  return first + second;
}

double kappa1_series(double L, double eps_f, int order) {
  require_series_args(eps_f, order);
  return L / (4.0 * kPi) * eps_f *
         horner(series::kappa1_depth, eps_f, static_cast<std::size_t>(order));
}

double kappa3_series(double L, double eps_f, int order) {
  require_series_args(eps_f, order);
  return L / (8.0 * kPi) * eps_f *
         horner(series::kappa3_depth, eps_f, static_cast<std::size_t>(order));
}

double pk_exponential_ansatz(double k, double tau_q) {
  if (!(tau_q > 0.0)) throw std::invalid_argument("tau_q must be positive");
  return std::exp(-kPi * k * std::sqrt(1.5 * tau_q));
}

double kappa_slow_approx(double L, double tau_q, int q) {
  if (q < 1 || q > 3) {
    throw std::invalid_argument("cumulant order must be 1..3, got " + std::to_string(q));
  }
  if (!(tau_q > 0.0)) throw std::invalid_argument("tau_q must be positive");
  const double pi2 = kPi * kPi;
  return L / std::sqrt(6.0 * pi2 * pi2 * tau_q) / q;
}

}  // namespace tfim
