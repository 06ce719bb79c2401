#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "output.hpp"
#include "tfim/cli.hpp"
#include "tfim/cumulants.hpp"
#include "tfim/dynamics.hpp"
#include "tfim/errors.hpp"
#include "tfim/fcs.hpp"
#include "tfim/scaling.hpp"

namespace tfim::cli {
namespace {

using detail::CsvTable;
using detail::Json;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out = linspace(std::log10(lo), std::log10(hi), n);
  for (double& v : out) v = std::pow(10.0, v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_increasing(const std::vector<double>& values, const std::string& name) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    require(values[i] > values[i - 1], name + " values must be strictly increasing");
  }
}

// Checks shared by every command, run before any computation.
void validate_common(const RunConfig& config) {
  build_grid(config.n_sites);
  config.settings().validate();
  require(std::isfinite(config.g_initial), "--gi must be finite");
  require(!config.g_final || std::isfinite(*config.g_final), "--gf must be finite");
  for (double v : config.tau_q) require(std::isfinite(v) && v >= 0.0, "--tauq values must be >= 0");
  for (double v : config.eps) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, "--eps values must lie in [0, 1]");
  }
  require(config.fit_window.lo > 0.0 && config.fit_window.hi > config.fit_window.lo,
          "--fit-window needs 0 < LO < HI");
}

std::optional<double> ratio_or_empty(const std::optional<CumulantRatios>& r, bool variance) {
  if (!r) return std::nullopt;
  return variance ? r->variance : r->skewness;
}

void emit(const RunConfig& config, std::string_view stem, const CsvTable& table, Json meta,
          std::ostream& log) {
  const auto dir = detail::prepare_output_dir(config);
  if (config.format == OutputFormat::json) {
    meta["columns"] = table.columns();
    meta["rows"] = table.to_json();
    const auto path = dir / (std::string(stem) + ".json");
    detail::write_text(path, meta.dump(2) + "\n");
    log << "wrote " << path.string() << '\n';
    return;
  }
  const auto csv = dir / (std::string(stem) + ".csv");
  const auto side = dir / (std::string(stem) + ".meta.json");
  meta["data_file"] = csv.filename().string();
  meta["columns"] = table.columns();
  detail::write_text(csv, table.str());
  detail::write_text(side, meta.dump(2) + "\n");
  log << "wrote " << csv.string() << " and " << side.string() << '\n';
}

}  // namespace

int cmd_sweep_depth(const RunConfig& config, std::ostream& log) {
  validate_common(config);
  require(!config.g_final, "sweep-depth takes depths via --eps, not --gf");
  require(config.tau_q.size() <= 1, "sweep-depth takes a single --tauq value");
  const std::vector<double> eps = config.eps.empty() ? linspace(0.0, 1.0, 21) : config.eps;
  require_increasing(eps, "--eps");
  require(-1.0 + eps.front() >= config.g_initial, "every depth must give g_final >= --gi");
  const double tau = config.analytic_only ? 0.0 : (config.tau_q.empty() ? 0.01 : config.tau_q[0]);

  const MomentumGrid grid = build_grid(config.n_sites);
  const SweepTable sweep = depth_sweep(grid, config.g_initial, eps, tau, config.settings());

  const double L = config.n_sites;
  CsvTable table({"epsilon_f", "kappa1_pairs", "kappa2_pairs", "kappa3_pairs", "kappa1_kinks",
                  "kappa2_kinks", "kappa3_kinks", "ratio_2k2_k1", "ratio_4k3_k1", "kappa1_exact",
                  "kappa2_exact", "kappa3_exact", "kappa1_series", "kappa3_series"});
  for (const SweepRow& row : sweep.rows) {
    const double g_f = -1.0 + row.axis_value;
    table.add_row({row.axis_value, row.pairs.kappa1, row.pairs.kappa2, row.pairs.kappa3,
                   row.kinks.kappa1, row.kinks.kappa2, row.kinks.kappa3,
                   ratio_or_empty(row.kink_ratios, true), ratio_or_empty(row.kink_ratios, false),
                   kappa1_exact(L, g_f), kappa2_exact(L, g_f), kappa3_exact(L, g_f),
                   kappa1_series(L, row.axis_value, 5), kappa3_series(L, row.axis_value, 5)});
  }

  Json meta = detail::metadata("sweep-depth", "tfim-fcs/sweep-depth/1", config);
  meta["tau_q"] = tau;
  meta["profile"] = tau == 0.0 ? "analytic-sudden" : "dynamic";
  meta["reference_columns"] = "closed forms and order-5 depth series for g_i = -1";
  emit(config, "sweep_depth", table, std::move(meta), log);
  return kExitOk;
}

int cmd_sweep_rate(const RunConfig& config, std::ostream& log) {
  validate_common(config);
  require(!config.analytic_only, "sweep-rate has no analytic-only mode");
  require(config.eps.empty(), "sweep-rate takes the final field via --gf, not --eps");
  const std::vector<double> taus = config.tau_q.empty() ? logspace(0.01, 100.0, 25) : config.tau_q;
  require_increasing(taus, "--tauq");
  require(taus.front() > 0.0, "sweep-rate needs --tauq > 0");
  const double g_f = config.g_final.value_or(0.0);
  require(g_f >= config.g_initial, "--gf must be >= --gi");

  const MomentumGrid grid = build_grid(config.n_sites);
  const SweepTable sweep = rate_sweep(grid, config.g_initial, g_f, taus, config.settings());

  const double L = config.n_sites;
  CsvTable table({"tau_q", "kappa1_pairs", "kappa2_pairs", "kappa3_pairs", "kappa1_kinks",
                  "kappa2_kinks", "kappa3_kinks", "ratio_2k2_k1", "ratio_4k3_k1",
                  "kappa1_slow_approx", "kappa2_slow_approx", "kappa3_slow_approx"});
  for (const SweepRow& row : sweep.rows) {
    table.add_row({row.axis_value, row.pairs.kappa1, row.pairs.kappa2, row.pairs.kappa3,
                   row.kinks.kappa1, row.kinks.kappa2, row.kinks.kappa3,
                   ratio_or_empty(row.kink_ratios, true), ratio_or_empty(row.kink_ratios, false),
                   kappa_slow_approx(L, row.axis_value, 1), kappa_slow_approx(L, row.axis_value, 2),
                   kappa_slow_approx(L, row.axis_value, 3)});
  }

  Json meta = detail::metadata("sweep-rate", "tfim-fcs/sweep-rate/1", config);
  meta["g_final"] = g_f;
  Json fits = Json::object();
  const std::vector<double> xs = sweep.axis_values();
  for (int q = 1; q <= 3; ++q) {
    const std::string key = "kappa" + std::to_string(q) + "_pairs";
    try {
      const FitReport fit = fit_power_law(xs, sweep.pair_column(q), config.fit_window);
      for (double v : {fit.parameter, fit.prefactor, fit.residual}) detail::checked(v, key);
      fits[key] = detail::fit_to_json(fit);
      log << key << " exponent " << detail::format_number(fit.parameter) << " over "
          << fit.points << " points\n";
    } catch (const InsufficientDataError& e) {
      fits[key] = {{"fit", nullptr}, {"reason", e.what()}};
    }
  }
  meta["fits"] = std::move(fits);
  try {
    const CrossoverEstimate c = detect_crossover(sweep, config.fit_window);
    meta["crossover"] = {{"tau_star", detail::checked(c.tau_star, "tau_star")},
                         {"plateau", detail::checked(c.plateau, "plateau")}};
  } catch (const std::exception& e) {
    meta["crossover"] = {{"tau_star", nullptr}, {"reason", e.what()}};
  }
  emit(config, "sweep_rate", table, std::move(meta), log);
  return kExitOk;
}

int cmd_fcs(const RunConfig& config, std::ostream& log) {
  validate_common(config);
  const bool by_tau = config.tau_q.size() > 1 || (config.eps.empty() && !config.tau_q.empty());
  require(!(by_tau && !config.eps.empty()), "fcs sweeps either --eps or a --tauq list, not both");
  require(!(by_tau && config.analytic_only), "--analytic-only applies to depth points only");

  struct Point {
    std::string label;
    double g_f;
    double tau;
    double axis;
  };
  std::vector<Point> points;
  if (by_tau) {
    const double g_f = config.g_final.value_or(0.0);
    for (double tau : config.tau_q) {
      require(tau > 0.0, "fcs --tauq points must be > 0");
      points.push_back({"tau_" + detail::format_label(tau), g_f, tau, tau});
    }
  } else {
    require(!config.g_final, "fcs depth points are set via --eps, not --gf");
    const std::vector<double> eps =
        config.eps.empty() ? std::vector<double>{0.25, 0.5, 1.0} : config.eps;
    const double tau = config.analytic_only || config.tau_q.empty() ? 0.0 : config.tau_q[0];
    for (double e : eps) points.push_back({"eps_" + detail::format_label(e), -1.0 + e, tau, e});
  }
  for (const Point& p : points) require(p.g_f >= config.g_initial, "g_final must be >= --gi");

  const MomentumGrid grid = build_grid(config.n_sites);
  const auto dir = detail::prepare_output_dir(config);
  Json meta = detail::metadata("fcs", "tfim-fcs/fcs/1", config);
  meta["axis"] = by_tau ? "tau_q" : "epsilon_f";
  Json entries = Json::array();

  for (const Point& point : points) {
    const QuenchProtocol protocol(config.g_initial, point.g_f, point.tau);
    const ExcitationProfile profile = profile_for(grid, protocol, config.settings());
    const DefectDistribution exact = distribution_from_profile(profile);
    const CumulantTriple c = cumulants_from_profile(profile);

    std::vector<std::string> columns = {"n", "p_exact", "p_gaussian"};
    std::optional<Histogram> hist;
    std::vector<double> freq;
    if (config.shots > 0) {
      hist = sample_histogram(profile, config.shots, config.seed, config.threads);
      freq = hist->frequencies();
      columns.push_back("p_sampled");
    }
    CsvTable table(columns);

    Json entry;
    entry[by_tau ? "tau_q" : "epsilon_f"] = point.axis;
    entry["g_final"] = point.g_f;
    entry["tau_q"] = point.tau;
    entry["cumulants_pairs"] = {{"kappa1", c.kappa1}, {"kappa2", c.kappa2}, {"kappa3", c.kappa3}};

    std::optional<DefectDistribution> gauss;
    if (c.kappa2 > 0.0) {
      gauss = gaussian_reference(c.kappa1, c.kappa2, exact.size());
      const DistributionDistance d = distribution_distance(exact.probabilities(), gauss->probabilities());
      entry["gaussian_distance"] = {
          {"total_variation", detail::checked(d.total_variation, "total_variation")},
          {"kolmogorov", detail::checked(d.kolmogorov, "kolmogorov")}};
    } else {
      entry["gaussian_distance"] = nullptr;
      entry["gaussian_reason"] = "zero variance; the reference is a point mass";
    }
    for (std::size_t n = 0; n < exact.size(); ++n) {
      std::vector<std::optional<double>> row = {static_cast<double>(n), exact[n],
                                                gauss ? std::optional<double>((*gauss)[n])
                                                      : std::optional<double>(n == 0 ? 1.0 : 0.0)};
      if (hist) row.push_back(n < freq.size() ? freq[n] : 0.0);
      table.add_row(row);
    }
    if (hist) {
      const CumulantTriple s = hist->cumulants();
      const DistributionDistance d = distribution_distance(exact.probabilities(), freq);
      entry["histogram"] = {{"shots", hist->shots},
                            {"seed", hist->seed},
                            {"cumulants_pairs",
                             {{"kappa1", s.kappa1}, {"kappa2", s.kappa2}, {"kappa3", s.kappa3}}},
                            {"total_variation_to_exact", detail::checked(d.total_variation, "tv")}};
    }

    if (config.format == OutputFormat::json) {
      entry["columns"] = table.columns();
      entry["rows"] = table.to_json();
    } else {
      const auto path = dir / ("fcs_" + point.label + ".csv");
      detail::write_text(path, table.str());
      entry["data_file"] = path.filename().string();
      log << "wrote " << path.string() << '\n';
    }
    entries.push_back(std::move(entry));
  }

  meta["points"] = std::move(entries);
  const auto side = dir / (config.format == OutputFormat::json ? "fcs.json" : "fcs.meta.json");
  detail::write_text(side, meta.dump(2) + "\n");
  log << "wrote " << side.string() << '\n';
  return kExitOk;
}

}  // namespace tfim::cli
