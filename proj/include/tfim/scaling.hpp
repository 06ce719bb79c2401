#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tfim/dynamics.hpp"
#include "tfim/fcs.hpp"

namespace tfim {

enum class SweepAxis { epsilon_f, tau_q };

std::string_view to_string(SweepAxis axis) noexcept;

struct SweepRow {
  double axis_value = 0.0;
  CumulantTriple pairs;
  CumulantTriple kinks;
  /// Empty when kappa1 = 0 (zero-depth quench from exactly g_c).
  std::optional<CumulantRatios> pair_ratios;
  std::optional<CumulantRatios> kink_ratios;
};

struct SweepTable {
  SweepAxis axis = SweepAxis::epsilon_f;
  int n_sites = 0;
  double g_initial = 0.0;
  /// tau_q for depth sweeps, g_final for rate sweeps.
  double fixed_value = 0.0;
  EvolutionSettings settings;
  std::vector<SweepRow> rows;

  std::vector<double> axis_values() const;
  /// Pair cumulant of order q (1..3) for every row.
  std::vector<double> pair_column(int q) const;
};

/// One row per depth eps_f (g_final = -1 + eps_f). tau_q = 0 uses the sudden
/// overlaps. eps values must lie in [0, 1], be strictly increasing, and give
/// g_final >= g_i.
SweepTable depth_sweep(const MomentumGrid& grid, double g_i, std::span<const double> eps_list,
                       double tau_q, const EvolutionSettings& settings = {});

/// One row per quench time; tau values must be positive and strictly increasing.
SweepTable rate_sweep(const MomentumGrid& grid, double g_i, double g_f,
                      std::span<const double> tau_list, const EvolutionSettings& settings = {});

enum class FitModel { power_law, exponential };

struct FitWindow {
  double lo;
  double hi;
};

inline constexpr FitWindow kDefaultPowerLawWindow{5.0, 100.0};
inline constexpr double kDefaultProbabilityFloor = 5e-4;
inline constexpr double kDefaultProbabilityCeiling = 0.5;

struct FitReport {
  FitModel model = FitModel::power_law;
  /// Exponent for power laws, positive decay constant for exponentials.
  double parameter = 0.0;
  double prefactor = 0.0;
  /// Root-mean-square residual in log space.
  double residual = 0.0;
  /// Axis range actually covered by the fitted points.
  FitWindow window{0.0, 0.0};
  std::size_t points = 0;
};

/// Least squares of log y on log x over points with x in window.
/// Throws std::invalid_argument on nonpositive data inside the window and
/// InsufficientDataError for fewer than four points.
FitReport fit_power_law(std::span<const double> xs, std::span<const double> ys,
                        FitWindow window = kDefaultPowerLawWindow);

/// Least squares of log p on k over points with p in [p_floor, p_ceiling].
/// Throws InsufficientDataError for fewer than four such points.
FitReport fit_exponential_decay(std::span<const double> ks, std::span<const double> ps,
                                double p_floor = kDefaultProbabilityFloor,
                                double p_ceiling = kDefaultProbabilityCeiling);

struct CrossoverEstimate {
  double tau_star;
  double plateau;
  FitReport power_law;
};

/// Intersection of the fast-quench plateau (mean pair kappa1 over rows below
/// the power-law window) with the power law fitted inside the window.
/// Throws InsufficientRangeError unless the table covers both regimes.
CrossoverEstimate detect_crossover(const SweepTable& table,
                                   FitWindow power_window = kDefaultPowerLawWindow);

}  // namespace tfim
