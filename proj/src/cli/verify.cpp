#include <algorithm>
#include <bit>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "output.hpp"
#include "tfim/cli.hpp"
#include "tfim/dynamics.hpp"
#include "tfim/fcs.hpp"
#include "tfim/scaling.hpp"
#include "tfim/spectral.hpp"

namespace tfim::cli {
namespace {

using detail::Json;
using std::numbers::pi;

// Grid-based checks run on a fixed chain so that reports are comparable.
constexpr int kVerifySites = 100;

VerifyCheck make_check(std::string name, double measured, double tolerance, std::string detail) {
  return {std::move(name), measured, tolerance, measured <= tolerance, std::move(detail)};
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// (L / 2 pi) * integral over (0, pi) of f(p_k) for quenches from g_i = -1.
template <class F>
double kappa_quadrature(double L, double g_f, F weight) {
  const auto integrand = [&](double k) { return weight(sudden_pk_critical(k, g_f)); };
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, pi, 15, 1e-11);
  return L / (2.0 * pi) * value;
}

VerifyCheck check_dual_path() {
  const MomentumGrid grid = build_grid(kVerifySites);
  double worst = 0.0;
  for (const auto& [gi, gf] : {std::pair{-1.01, 0.0}, {-1.0, -0.5}, {-3.0, 2.0}, {0.2, 0.7}}) {
    for (double k : grid) worst = std::max(worst, std::abs(sudden_pk(k, gi, gf) - sudden_pk_overlap(k, gi, gf)));
  }
  return make_check("spectral_dual_path", worst, 1e-12,
                    "max |rational - overlap| over N=100 grid, four field pairs");
}

VerifyCheck check_critical_form() {
  const MomentumGrid grid = build_grid(kVerifySites);
  double worst = 0.0;
  for (double gf : {-0.9, -0.5, -0.1, 0.0}) {
    for (double k : grid) worst = std::max(worst, std::abs(sudden_pk(k, -1.0, gf) - sudden_pk_critical(k, gf)));
  }
  return make_check("critical_closed_form", worst, 1e-12, "max |rational - critical form| at g_i=-1");
}

VerifyCheck check_quadrature(const std::string& name, const std::function<double(double, double)>& closed,
                             double (*weight)(double)) {
  double worst = 0.0;
  const double L = kVerifySites;
  for (int i = 0; i < 50; ++i) {
    const double gf = -0.99 + 0.98 * i / 49.0;
    worst = std::max(worst, relative(closed(L, gf), kappa_quadrature(L, gf, weight)));
  }
  return make_check(name, worst, 1e-6, "max relative error vs adaptive quadrature, 50 g_f in [-0.99,-0.01]");
}

VerifyCheck check_series() {
  double worst = 0.0;
  const double L = kVerifySites;
  for (double eps : {0.01, 0.03, 0.05}) {
    worst = std::max(worst, relative(kappa1_series(L, eps, 5), kappa1_exact(L, -1.0 + eps)));
    worst = std::max(worst, relative(kappa3_series(L, eps, 5), kappa3_exact(L, -1.0 + eps)));
  }
  return make_check("depth_series", worst, 1e-6, "order-5 depth series vs closed forms, eps <= 0.05");
}

VerifyCheck check_discrete_sum(const std::function<double(double, double)>& closed) {
  const MomentumGrid grid = build_grid(2000);
  double worst = 0.0;
  for (double gf : {-0.75, -0.5, -0.25, 0.0}) {
    double sum = 0.0;
    for (double k : grid) sum += sudden_pk_critical(k, gf);
    worst = std::max(worst, relative(sum, closed(2000.0, gf)));
  }
  return make_check("kappa1_discrete_sum", worst, 2e-3, "mode sum at N=2000 vs closed form");
}

VerifyCheck check_enumeration() {
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + trial % 12;
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = keyed_uniform(0x5eed, trial, i);
    std::vector<double> brute(m + 1, 0.0);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      double w = 1.0;
      for (std::size_t i = 0; i < m; ++i) w *= (mask >> i & 1u) ? p[i] : 1.0 - p[i];
      brute[static_cast<std::size_t>(std::popcount(mask))] += w;
    }
    const DefectDistribution d = distribution_from_profile(p);
    for (std::size_t n = 0; n <= m; ++n) worst = std::max(worst, std::abs(d[n] - brute[n]));
  }
  return make_check("convolution_vs_enumeration", worst, 1e-12, "40 random profiles, M <= 12");
}

VerifyCheck check_distribution_moments() {
  const ExcitationProfile profile = profile_sudden(build_grid(kVerifySites), -1.01, 0.0);
  const CumulantTriple a = distribution_from_profile(profile).cumulants();
  const CumulantTriple b = cumulants_from_profile(profile);
  const double worst = std::max({relative(a.kappa1, b.kappa1), relative(a.kappa2, b.kappa2),
                                 relative(a.kappa3, b.kappa3)});
  return make_check("distribution_moments", worst, 1e-9, "moments of P(n) vs per-mode cumulant sums");
}

VerifyCheck check_sudden_limit(const EvolutionSettings& settings) {
  const MomentumGrid grid = build_grid(kVerifySites);
  const QuenchProtocol ramp(-1.01, 0.0, 0.01);
  double worst = 0.0;
  for (double k : grid) {
    worst = std::max(worst, std::abs(transition_probability(k, ramp, settings) - sudden_pk(k, -1.01, 0.0)));
  }
  return make_check("sudden_limit_dynamics", worst, 1e-2, "tau_q=0.01 ramp vs sudden overlap, N=100");
}

VerifyCheck check_fit_sanity() {
  std::vector<double> xs, ys, ks, ps;
  for (int i = 0; i < 12; ++i) {
    xs.push_back(std::pow(10.0, 0.2 * i));
    ys.push_back(3.0 / std::sqrt(xs.back()));
    ks.push_back(0.05 * (i + 1));
    ps.push_back(0.4 * std::exp(-7.0 * ks.back()));
  }
  const FitReport power = fit_power_law(xs, ys, {0.5, 1e3});
  const FitReport expo = fit_exponential_decay(ks, ps);
  const double worst = std::max(std::abs(power.parameter + 0.5), std::abs(expo.parameter - 7.0));
  return make_check("fit_sanity", worst, 1e-9, "recover exponent -0.5 and decay 7 from exact synthetic data");
}

VerifyCheck check_exponential_ansatz(const EvolutionSettings& settings) {
  const MomentumGrid grid = build_grid(kVerifySites);
  const double target = pi * std::sqrt(1.5);
  double worst = 0.0;
  std::ostringstream text;
  text << "decay/sqrt(tau_q) vs " << detail::format_number(target) << ", N=100:";
  for (double tau : {10.0, 30.0, 100.0}) {
    const ExcitationProfile profile = profile_dynamic(grid, QuenchProtocol(-1.01, 0.0, tau), settings);
    std::vector<double> q, p;
    for (std::size_t i = grid.size(); i-- > 0;) {
      q.push_back(pi - grid[i]);
      p.push_back(profile[i]);
    }
    const double scaled = fit_exponential_decay(q, p).parameter / std::sqrt(tau);
    worst = std::max(worst, relative(scaled, target));
    text << " tau=" << tau << " -> " << detail::format_number(scaled) << ';';
  }
  return make_check("exponential_ansatz", worst, 0.10, text.str());
}

double weight_k1(double p) { return p; }
double weight_k2(double p) { return p * (1.0 - p); }
double weight_k3(double p) { return p * (1.0 - p) * (1.0 - 2.0 * p); }

Json report_json(const VerifyReport& report) {
  Json checks = Json::array();
  for (const VerifyCheck& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"measured", std::isfinite(c.measured) ? Json(c.measured) : Json("non-finite")},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return checks;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

const VerifyCheck* VerifyReport::find(std::string_view name) const {
  for (const VerifyCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerifyReport run_verify(const RunConfig& config, const VerifyHooks& hooks) {
  const EvolutionSettings settings = config.settings();
  settings.validate();
  const auto kappa2 = [](double L, double g) { return kappa2_exact(L, g); };

  VerifyReport report;
  report.checks.push_back(check_dual_path());
  report.checks.push_back(check_critical_form());
  report.checks.push_back(check_quadrature("kappa1_quadrature", hooks.kappa1, weight_k1));
  report.checks.push_back(check_quadrature("kappa2_quadrature", kappa2, weight_k2));
  report.checks.push_back(check_quadrature("kappa3_quadrature", hooks.kappa3, weight_k3));
  report.checks.push_back(check_series());
  report.checks.push_back(check_discrete_sum(hooks.kappa1));
  report.checks.push_back(check_enumeration());
  report.checks.push_back(check_distribution_moments());
  report.checks.push_back(check_sudden_limit(settings));
  report.checks.push_back(check_fit_sanity());
  report.checks.push_back(check_exponential_ansatz(settings));
  // NaN never compares <= tolerance, so non-finite measurements already fail.
  return report;
}

int cmd_verify(const RunConfig& config, std::ostream& log, const VerifyHooks& hooks) {
  const VerifyReport report = run_verify(config, hooks);
  for (const VerifyCheck& c : report.checks) {
    log << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << detail::format_number(c.measured)
        << "  tolerance=" << detail::format_number(c.tolerance) << "  (" << c.detail << ")\n";
  }
  Json doc = detail::metadata("verify", "tfim-fcs/verify/1", config);
  doc["passed"] = report.passed();
  doc["checks"] = report_json(report);
  if (config.out_dir) {
    const auto path = detail::prepare_output_dir(config) / "verify.json";
    detail::write_text(path, doc.dump(2) + "\n");
    log << "wrote " << path.string() << '\n';
  } else if (config.format == OutputFormat::json) {
    log << doc.dump(2) << '\n';
  }
  if (report.passed()) return kExitOk;
  log << "verify failed:";
  for (const VerifyCheck& c : report.checks) {
    if (!c.passed) log << ' ' << c.name;
  }
  log << '\n';
  return kExitCheckFailed;
}

}  // namespace tfim::cli
