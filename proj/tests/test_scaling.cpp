#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tfim/cumulants.hpp"
#include "tfim/errors.hpp"
#include "tfim/scaling.hpp"

using namespace tfim;
using doctest::Approx;
using std::numbers::pi;

namespace {

std::vector<double> depths(int n) {
  std::vector<double> e;
  for (int i = 0; i < n; ++i) e.push_back(static_cast<double>(i) / (n - 1));
  return e;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return t;
}

const SweepTable& fig4_table() {
  static const SweepTable table = rate_sweep(build_grid(100), -1.01, 0.0, log_grid(0.01, 100.0, 25));
  return table;
}

}  // namespace

TEST_CASE("depth sweep at tau_q = 0.01: kappa2 slope through the origin") {
  const SweepTable t = depth_sweep(build_grid(100), -1.01, depths(21), 0.01);
  REQUIRE(t.rows.size() == 21);
  CHECK(t.axis == SweepAxis::epsilon_f);
  CHECK(t.fixed_value == 0.01);
  double num = 0.0, den = 0.0;
  for (const SweepRow& r : t.rows) {
    num += r.axis_value * r.pairs.kappa2;
    den += r.axis_value * r.axis_value;
  }
  CHECK(num / den == Approx(100.0 / 16).epsilon(0.03));
}

TEST_CASE("depth sweep rows agree with an independent per-mode oracle") {
  // Sudden rows: the half-angle overlap formula summed over the grid.
  const MomentumGrid grid = build_grid(100);
  const SweepTable t = depth_sweep(grid, -1.01, depths(11), 0.0);
  for (const SweepRow& r : t.rows) {
    double k1 = 0.0;
    for (double k : grid) k1 += oracle::pk_from_angles(k, -1.01, -1.0 + r.axis_value);
    CHECK(r.pairs.kappa1 == Approx(k1).epsilon(1e-12));
  }
}

TEST_CASE("rows are internally consistent and axes increase") {
  const SweepTable t = depth_sweep(build_grid(40), -1.0, depths(6), 0.05);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const SweepRow& r = t.rows[i];
    CHECK(r.kinks.kappa1 == 2 * r.pairs.kappa1);
    CHECK(r.kinks.kappa2 == 4 * r.pairs.kappa2);
    CHECK(r.kinks.kappa3 == 8 * r.pairs.kappa3);
    CHECK(r.pairs.kappa2 <= r.pairs.kappa1);
    if (i) CHECK(r.axis_value > t.rows[i - 1].axis_value);
  }
}

TEST_CASE("zero-depth sudden quench from g_c has no defects and no ratios") {
  const SweepTable t = depth_sweep(build_grid(20), -1.0, std::vector<double>{0.0, 0.5}, 0.0);
  CHECK(t.rows[0].pairs.kappa1 == 0.0);
  CHECK_FALSE(t.rows[0].pair_ratios.has_value());
  CHECK(t.rows[1].pair_ratios.has_value());
}

TEST_CASE("sweep preconditions") {
  const MomentumGrid g = build_grid(10);
  CHECK_THROWS_AS(depth_sweep(g, -1.0, std::vector<double>{0.5, 0.2}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(depth_sweep(g, -1.0, std::vector<double>{0.2, 1.2}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(depth_sweep(g, -0.5, std::vector<double>{0.2}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rate_sweep(g, -1.0, 0.0, std::vector<double>{1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(rate_sweep(g, -1.0, 0.0, std::vector<double>{0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("rate sweep: plateau, power law and slow-limit prefactor") {
  const SweepTable& t = fig4_table();
  REQUIRE(t.rows.size() == 25);
  CHECK(t.axis == SweepAxis::tau_q);
  // Fast plateau equals the sudden value at g_i = -1.01.
  const double sudden = cumulants_from_profile(profile_sudden(build_grid(100), -1.01, 0.0)).kappa1;
  CHECK(t.rows[0].pairs.kappa1 == Approx(sudden).epsilon(1e-4));
  // Strictly decreasing beyond tau_q = 2.
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (t.rows[i - 1].axis_value >= 2.0) CHECK(t.rows[i].pairs.kappa1 < t.rows[i - 1].pairs.kappa1);
  }
  const FitReport fit = fit_power_law(t.axis_values(), t.pair_column(1));
  CHECK(fit.parameter == Approx(-0.5).epsilon(0.1));
  CHECK(fit.window.lo >= 5.0);
  CHECK(fit.window.hi <= 100.0);
}

TEST_CASE("kappa1 at tau_q = 54.6 is within a factor 1.5 of the slow-limit prefactor") {
  const SweepTable t = rate_sweep(build_grid(100), -1.01, 0.0, std::vector<double>{54.6});
  const double ratio = t.rows[0].pairs.kappa1 / kappa_slow_approx(100, 54.6, 1);
  CHECK(ratio > 1 / 1.5);
  CHECK(ratio < 1.5);
}

TEST_CASE("power-law fit on exact and noisy data") {
  std::vector<double> xs = log_grid(1.0, 1000.0, 30), ys, noisy;
  oracle::Lcg rng{41};
  for (double x : xs) {
    ys.push_back(1 / std::sqrt(x));
    noisy.push_back(3 / std::sqrt(x) * (1 + 0.01 * rng.uniform(-1.0, 1.0)));
  }
  const FitReport exact = fit_power_law(xs, ys, {0.5, 2000.0});
  CHECK(exact.parameter == Approx(-0.5).epsilon(1e-12));
  CHECK(exact.residual < 1e-12);
  CHECK(exact.points == 30);
  CHECK(exact.model == FitModel::power_law);
  const FitReport n = fit_power_law(xs, noisy, {0.5, 2000.0});
  CHECK(std::abs(n.parameter + 0.5) < 0.02);
  CHECK(n.residual >= 0.0);
}

TEST_CASE("fits are scale equivariant") {
  std::vector<double> xs = log_grid(1.0, 100.0, 12), ys, ys7;
  for (double x : xs) {
    ys.push_back(2.0 * std::pow(x, -0.43) * (1 + 0.1 * std::sin(x)));
    ys7.push_back(7.0 * ys.back());
  }
  const FitReport a = fit_power_law(xs, ys, {0.5, 200.0});
  const FitReport b = fit_power_law(xs, ys7, {0.5, 200.0});
  CHECK(a.parameter == Approx(b.parameter).epsilon(1e-12));
  CHECK(b.prefactor == Approx(7 * a.prefactor).epsilon(1e-12));
}

TEST_CASE("fit errors") {
  const std::vector<double> xs = {1, 2, 3, 4, 5}, ys = {1, 1, 1, 1, 1}, bad = {1, -1, 1, 1, 1};
  CHECK_THROWS_AS(fit_power_law(xs, ys, {1.5, 4.5}), InsufficientDataError);
  CHECK_THROWS_AS(fit_power_law(xs, bad, {0.5, 6.0}), std::invalid_argument);
  const std::vector<double> ks = {0.1, 0.2, 0.3}, ps = {0.4, 0.3, 0.2};
  CHECK_THROWS_AS(fit_exponential_decay(ks, ps), InsufficientDataError);
}

TEST_CASE("exponential fit on exact data") {
  std::vector<double> ks, ps;
  for (int i = 0; i < 40; ++i) {
    ks.push_back(0.05 * i);
    ps.push_back(std::exp(-3.85 * ks.back()));
  }
  // p = 1 at k = 0 lies above the 0.5 ceiling and is excluded.
  const FitReport f = fit_exponential_decay(ks, ps);
  CHECK(f.model == FitModel::exponential);
  CHECK(f.parameter == Approx(3.85).epsilon(1e-10));
  CHECK(f.points < 40);
}

TEST_CASE("crossover on synthetic data") {
  std::vector<double> xs = log_grid(0.01, 100.0, 41);
  SweepTable t;
  t.axis = SweepAxis::tau_q;
  for (double x : xs) {
    SweepRow r;
    r.axis_value = x;
    r.pairs.kappa1 = x < 1 ? 10.0 : 10.0 / std::sqrt(x);
    t.rows.push_back(r);
  }
  const CrossoverEstimate c = detect_crossover(t, {5.0, 100.0});
  CHECK(c.tau_star == Approx(1.0).epsilon(0.2));
}

TEST_CASE("crossover on the N = 100 rate sweep is of order one and stable under thinning") {
  const SweepTable& t = fig4_table();
  const CrossoverEstimate c = detect_crossover(t);
  MESSAGE("tau* = " << c.tau_star << ", plateau = " << c.plateau);
  CHECK(c.tau_star > 0.1);
  CHECK(c.tau_star < 10.0);

  SweepTable thin = t;
  thin.rows.clear();
  for (std::size_t i = 0; i < t.rows.size(); i += 2) thin.rows.push_back(t.rows[i]);
  CHECK(detect_crossover(thin).tau_star == Approx(c.tau_star).epsilon(0.2));
}

TEST_CASE("crossover needs both regimes") {
  SweepTable t;
  t.axis = SweepAxis::tau_q;
  for (double x : log_grid(10.0, 100.0, 8)) {
    SweepRow r;
    r.axis_value = x;
    r.pairs.kappa1 = 1 / std::sqrt(x);
    t.rows.push_back(r);
  }
  CHECK_THROWS_AS(detect_crossover(t), InsufficientRangeError);
}

TEST_CASE("kink ratios: fast regime above one at every depth") {
  const SweepTable t = depth_sweep(build_grid(100), -1.0, depths(21), 0.0);
  for (const SweepRow& r : t.rows) {
    if (r.axis_value == 0.0) continue;
    REQUIRE(r.kink_ratios.has_value());
    CHECK(r.kink_ratios->variance > 1.0);
  }
}
