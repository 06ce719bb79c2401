#pragma once

#include <array>
#include <numbers>
#include <string_view>

namespace tfim {

enum class Convention { pairs, kinks };

std::string_view to_string(Convention convention) noexcept;

/// First three cumulants of a defect-number distribution.
struct CumulantTriple {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
  Convention convention = Convention::pairs;
};

// Closed forms and series for sudden quenches from g_i = -1 to g_f, with L the
// chain length. L is a real so that densities (L = 1) can be requested.

/// Mean number of defect pairs; domain -1 <= g_f <= 0, std::domain_error
/// otherwise. Uses the small-|g_f| series below kSingularSwitch.
double kappa1_exact(double L, double g_f);

/// (L/16)(1 + g_f); exact for every depth in [-1, 0].
double kappa2_exact(double L, double g_f);

/// Third cumulant of the pair number; same domain and branch logic as kappa1.
double kappa3_exact(double L, double g_f);

/// Partial sums of the expansions in the depth eps_f = g_f + 1, orders 1..5.
double kappa1_series(double L, double eps_f, int order);
double kappa3_series(double L, double eps_f, int order);

/// exp(-pi k sqrt(3 tau_q / 2)), with k the momentum distance from the
/// gap-closing mode.
double pk_exponential_ansatz(double k, double tau_q);

/// L (6 pi^4 tau_q)^(-1/2) / q for q = 1, 2, 3.
double kappa_slow_approx(double L, double tau_q, int q);

/// Below this |g_f| the closed forms switch to their g_f power series.
inline constexpr double kSingularSwitch = 1e-3;

namespace series {

inline constexpr double pi = std::numbers::pi;

/// kappa1 = (L / 4 pi) sum_n kappa1_depth[n] eps_f^(n+1).
inline constexpr std::array<double, 5> kappa1_depth = {
    1.0,
    (4.0 - pi) / 8.0,
    -(3.0 * pi - 10.0) / 24.0,
    -3.0 * (5.0 * pi - 16.0) / 128.0,
    -(105.0 * pi - 332.0) / 960.0,
};

/// kappa3 = (L / 8 pi) sum_n kappa3_depth[n] eps_f^(n+1).
inline constexpr std::array<double, 5> kappa3_depth = {
    1.0,
    -(pi - 2.0) / 4.0,
    -(pi - 3.0) / 4.0,
    -(9.0 * pi - 28.0) / 32.0,
    -(15.0 * pi - 47.0) / 48.0,
};

/// kappa1 = (L / 2 pi) sum_n kappa1_field[n] g_f^n.
inline constexpr std::array<double, 9> kappa1_field = {
    (pi - 2.0) / 2.0, 2.0 / 3.0,   2.0 / 15.0,  2.0 / 35.0, 2.0 / 63.0,
    2.0 / 99.0,       2.0 / 143.0, 2.0 / 195.0, 2.0 / 255.0,
};

/// kappa3 = (L / 8 pi) sum_n kappa3_field[n] g_f^n.
inline constexpr std::array<double, 9> kappa3_field = {
    2.0 / 3.0,          4.0 / 15.0,         -52.0 / 105.0,
    -44.0 / 315.0,      -244.0 / 3465.0,    -388.0 / 9009.0,
    -188.0 / 6435.0,    -772.0 / 36465.0,   -1012.0 / 62985.0,
};

}  // namespace series

}  // namespace tfim
