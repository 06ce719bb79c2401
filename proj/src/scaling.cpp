#include "tfim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tfim/errors.hpp"
#include "tfim/parallel.hpp"

namespace tfim {
namespace {

constexpr std::size_t kMinFitPoints = 4;

void require_increasing(std::span<const double> values, const char* what) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw std::invalid_argument(std::string(what) + " must be strictly increasing");
    }
  }
}

SweepRow make_row(double axis_value, const ExcitationProfile& profile) {
  SweepRow row;
  row.axis_value = axis_value;
  row.pairs = cumulants_from_profile(profile);
  row.kinks = to_kinks(row.pairs);
  if (row.pairs.kappa1 > 0.0) {
    row.pair_ratios = cumulant_ratios(row.pairs);
    row.kink_ratios = cumulant_ratios(row.kinks);
  }
  return row;
}

// Rows run concurrently, each integrating its modes serially.
template <typename ProtocolFor>
std::vector<SweepRow> run_rows(const MomentumGrid& grid, std::span<const double> axis,
                               const EvolutionSettings& settings, ProtocolFor protocol_for) {
  EvolutionSettings per_row = settings;
  per_row.threads = 1;
  std::vector<SweepRow> rows(axis.size());
  parallel_for(axis.size(), settings.threads, [&](std::size_t i) {
    rows[i] = make_row(axis[i], profile_for(grid, protocol_for(axis[i]), per_row));
  });
  return rows;
}

struct LineFit {
  double slope;
  double intercept;
  double rms;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("fit abscissae are all equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  return {slope, intercept, std::sqrt(ss / n)};
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept {
  return axis == SweepAxis::epsilon_f ? "epsilon_f" : "tau_q";
}

std::vector<double> SweepTable::axis_values() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.axis_value);
  return out;
}

std::vector<double> SweepTable::pair_column(int q) const {
  if (q < 1 || q > 3) throw std::invalid_argument("cumulant order must be 1..3");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    out.push_back(q == 1 ? r.pairs.kappa1 : q == 2 ? r.pairs.kappa2 : r.pairs.kappa3);
  }
  return out;
}

SweepTable depth_sweep(const MomentumGrid& grid, double g_i, std::span<const double> eps_list,
                       double tau_q, const EvolutionSettings& settings) {
  settings.validate();
  require_increasing(eps_list, "quench depths");
  for (double eps : eps_list) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("quench depth outside [0, 1]: " + std::to_string(eps));
    }
  }
  SweepTable table;
  table.axis = SweepAxis::epsilon_f;
  table.n_sites = grid.n_sites();
  table.g_initial = g_i;
  table.fixed_value = tau_q;
  table.settings = settings;
  table.rows = run_rows(grid, eps_list, settings, [&](double eps) {
    return QuenchProtocol(g_i, kCriticalField + eps, tau_q);
  });
  return table;
}

SweepTable rate_sweep(const MomentumGrid& grid, double g_i, double g_f,
                      std::span<const double> tau_list, const EvolutionSettings& settings) {
  settings.validate();
  require_increasing(tau_list, "quench times");
  for (double tau : tau_list) {
    if (!(tau > 0.0)) throw std::invalid_argument("quench times must be positive");
  }
  SweepTable table;
  table.axis = SweepAxis::tau_q;
  table.n_sites = grid.n_sites();
  table.g_initial = g_i;
  table.fixed_value = g_f;
  table.settings = settings;
  table.rows = run_rows(grid, tau_list, settings,
                        [&](double tau) { return QuenchProtocol(g_i, g_f, tau); });
  return table;
}

FitReport fit_power_law(std::span<const double> xs, std::span<const double> ys, FitWindow window) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit inputs differ in length");
  std::vector<double> lx;
  std::vector<double> ly;
  FitReport report;
  report.model = FitModel::power_law;
  report.window = {INFINITY, -INFINITY};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= window.lo && xs[i] <= window.hi)) continue;
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("power-law fit needs positive data inside the window");
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
    report.window.lo = std::min(report.window.lo, xs[i]);
    report.window.hi = std::max(report.window.hi, xs[i]);
  }
  if (lx.size() < kMinFitPoints) {
    throw InsufficientDataError("power-law fit needs at least 4 points in [" +
                                std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                                "], got " + std::to_string(lx.size()));
  }
  const LineFit line = least_squares(lx, ly);
  report.parameter = line.slope;
  report.prefactor = std::exp(line.intercept);
  report.residual = line.rms;
  report.points = lx.size();
  return report;
}

FitReport fit_exponential_decay(std::span<const double> ks, std::span<const double> ps,
                                double p_floor, double p_ceiling) {
  if (ks.size() != ps.size()) throw std::invalid_argument("fit inputs differ in length");
  if (!(p_floor > 0.0 && p_floor < p_ceiling)) {
    throw std::invalid_argument("exponential fit needs 0 < p_floor < p_ceiling");
  }
  std::vector<double> x;
  std::vector<double> ly;
  FitReport report;
  report.model = FitModel::exponential;
  report.window = {INFINITY, -INFINITY};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!(ps[i] >= p_floor && ps[i] <= p_ceiling)) continue;
    x.push_back(ks[i]);
    ly.push_back(std::log(ps[i]));
    report.window.lo = std::min(report.window.lo, ks[i]);
    report.window.hi = std::max(report.window.hi, ks[i]);
  }
  if (x.size() < kMinFitPoints) {
    throw InsufficientDataError("exponential fit needs at least 4 points with p in [" +
                                std::to_string(p_floor) + ", " + std::to_string(p_ceiling) +
                                "], got " + std::to_string(x.size()));
  }
  const LineFit line = least_squares(x, ly);
  report.parameter = -line.slope;
  report.prefactor = std::exp(line.intercept);
  report.residual = line.rms;
  report.points = x.size();
  return report;
}

CrossoverEstimate detect_crossover(const SweepTable& table, FitWindow power_window) {
  if (table.axis != SweepAxis::tau_q) {
    throw std::invalid_argument("crossover detection needs a quench-time sweep");
  }
  const auto taus = table.axis_values();
  const auto kappa1 = table.pair_column(1);

  double plateau = 0.0;
  std::size_t fast_rows = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < power_window.lo) {
      plateau += kappa1[i];
      ++fast_rows;
    }
  }
  if (fast_rows == 0) {
    throw InsufficientRangeError("sweep has no rows below the power-law window");
  }
  plateau /= static_cast<double>(fast_rows);

  FitReport fit;
  try {
    fit = fit_power_law(taus, kappa1, power_window);
  } catch (const InsufficientDataError& e) {
    throw InsufficientRangeError(std::string("sweep does not cover the power-law regime: ") +
                                 e.what());
  }
  if (!(plateau > 0.0) || fit.parameter >= 0.0) {
    throw InsufficientRangeError("no decaying power law to intersect with the plateau");
  }
  const double tau_star = std::pow(plateau / fit.prefactor, 1.0 / fit.parameter);
  return {tau_star, plateau, fit};
}

}  // namespace tfim
