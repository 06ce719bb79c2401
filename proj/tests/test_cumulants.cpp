#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tfim/cumulants.hpp"
#include "tfim/spectral.hpp"

using namespace tfim;
using doctest::Approx;
using std::numbers::pi;

namespace {

double w1(double p) { return p; }
double w2(double p) { return p * (1 - p); }
double w3(double p) { return p * (1 - p) * (1 - 2 * p); }

double mode_sum(int n, double gf, double (*w)(double)) {
  double s = 0.0;
  for (double k : build_grid(n)) s += w(sudden_pk_critical(k, gf));
  return s;
}

std::vector<double> field_grid() {
  std::vector<double> g;
  for (int i = 0; i < 50; ++i) g.push_back(-0.99 + 0.98 * i / 49.0);
  return g;
}

}  // namespace

TEST_CASE("kappa1 closed form") {
  CHECK(std::abs(kappa1_exact(100, -1.0)) < 1e-12);
  CHECK(kappa1_exact(100, 0.0) == Approx(100 * (pi - 2) / (4 * pi)).epsilon(1e-14));
  CHECK(kappa1_exact(100, 0.0) == Approx(9.0845).epsilon(0.02 / 9.0845));
  CHECK(kappa1_exact(100, -0.5) == Approx(oracle::kappa_integral(100, -0.5, w1)).epsilon(1e-6));
  CHECK_THROWS_AS(kappa1_exact(100, 0.1), std::domain_error);
  CHECK_THROWS_AS(kappa1_exact(100, -1.1), std::domain_error);
}

TEST_CASE("kappa1 at g_f = 0 from extrapolated mode sums") {
  // Mode sums converge as 1/N^2; Richardson-extrapolate two sizes.
  const double a = mode_sum(1000, 0.0, w1) / 1000;
  const double b = mode_sum(2000, 0.0, w1) / 2000;
  CHECK(100 * (4 * b - a) / 3 == Approx(kappa1_exact(100, 0.0)).epsilon(1e-7));
}

TEST_CASE("closed forms match tanh-sinh quadrature over g_f in [-0.99, -0.01]") {
  for (double g : field_grid()) {
    CHECK(kappa1_exact(100, g) == Approx(oracle::kappa_integral(100, g, w1)).epsilon(1e-6));
    CHECK(kappa2_exact(100, g) == Approx(oracle::kappa_integral(100, g, w2)).epsilon(1e-6));
    CHECK(kappa3_exact(100, g) == Approx(oracle::kappa_integral(100, g, w3)).epsilon(1e-6));
  }
}

TEST_CASE("closed forms are continuous across the small-|g_f| switch") {
  for (double g : {-kSingularSwitch, -0.999 * kSingularSwitch, -1.001 * kSingularSwitch}) {
    CHECK(kappa1_exact(100, g) == Approx(oracle::kappa_integral(100, g, w1)).epsilon(1e-9));
    CHECK(kappa3_exact(100, g) == Approx(oracle::kappa_integral(100, g, w3)).epsilon(1e-9));
  }
  const double below = std::nextafter(-kSingularSwitch, 0.0);
  CHECK(kappa1_exact(100, below) == Approx(kappa1_exact(100, -kSingularSwitch)).epsilon(1e-9));
  CHECK(kappa3_exact(100, below) == Approx(kappa3_exact(100, -kSingularSwitch)).epsilon(1e-9));
  CHECK(std::isfinite(kappa1_exact(100, -1e-300)));
  CHECK(std::isfinite(kappa3_exact(100, -0.0)));
}

TEST_CASE("kappa2 closed form") {
  CHECK(kappa2_exact(100, -1.0) == 0.0);
  CHECK(kappa2_exact(100, 0.0) == Approx(6.25).epsilon(1e-15));
  CHECK(kappa2_exact(200, -0.5) == Approx(6.25).epsilon(1e-15));
  // The N = 100 mode sum sits within O(1/L) of the continuum value.
  CHECK(std::abs(mode_sum(100, 0.0, w2) - 6.25) < 6.25 / 100);
}

TEST_CASE("kappa3 closed form") {
  CHECK(std::abs(kappa3_exact(100, -1.0)) < 1e-12);
  CHECK(kappa3_exact(100, 0.0) == Approx(100 / (12 * pi)).epsilon(1e-14));
  CHECK(kappa3_exact(100, 0.0) == Approx(2.6526).epsilon(1e-4));
  CHECK(kappa3_exact(100, 0.0) == Approx(oracle::kappa_integral(100, 0.0, w3)).epsilon(1e-9));
  CHECK(kappa3_exact(100, -0.5) == Approx(oracle::kappa_integral(100, -0.5, w3)).epsilon(1e-6));
  CHECK_THROWS_AS(kappa3_exact(100, 0.5), std::domain_error);
}

TEST_CASE("mode sums at N = 2000 converge to the closed forms") {
  for (double g : {-0.9, -0.5, -0.1, 0.0}) {
    CHECK(mode_sum(2000, g, w1) == Approx(kappa1_exact(2000, g)).epsilon(1e-3));
    CHECK(mode_sum(2000, g, w2) == Approx(kappa2_exact(2000, g)).epsilon(1e-3));
    CHECK(mode_sum(2000, g, w3) == Approx(kappa3_exact(2000, g)).epsilon(1e-3));
  }
}

TEST_CASE("kappa1 depth series") {
  for (int order = 1; order <= 5; ++order) CHECK(kappa1_series(100, 0.0, order) == 0.0);
  CHECK(kappa1_series(100, 0.1, 5) == Approx(kappa1_exact(100, -0.9)).epsilon(1e-3));
  CHECK(kappa1_series(100, 1.0, 1) == Approx(100 / (4 * pi)).epsilon(1e-14));
  CHECK(kappa1_series(100, 1.0, 1) == Approx(7.9577).epsilon(1e-4));
  CHECK(kappa1_series(100, 1.0, 1) < kappa1_exact(100, 0.0));
  CHECK_THROWS_AS(kappa1_series(100, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(kappa1_series(100, 0.5, 6), std::invalid_argument);
  CHECK_THROWS_AS(kappa1_series(100, 1.5, 3), std::invalid_argument);
}

TEST_CASE("kappa3 depth series") {
  for (int order = 1; order <= 5; ++order) CHECK(kappa3_series(100, 0.0, order) == 0.0);
  CHECK(kappa3_series(100, 0.05, 3) == Approx(kappa3_exact(100, -0.95)).epsilon(1e-3));
  CHECK(series::kappa3_depth[1] < 0.0);
  CHECK_THROWS_AS(kappa3_series(100, 0.5, 0), std::invalid_argument);
}

TEST_CASE("depth series coefficients are the Taylor coefficients of the closed forms") {
  // Divided differences of the closed forms at small depth.
  for (double eps : {1e-3, 2e-3}) {
    const double k1 = kappa1_exact(4 * pi, -1.0 + eps) / eps;
    const double k3 = kappa3_exact(8 * pi, -1.0 + eps) / eps;
    CHECK(k1 == Approx(1.0 + series::kappa1_depth[1] * eps).epsilon(10 * eps * eps));
    CHECK(k3 == Approx(1.0 + series::kappa3_depth[1] * eps).epsilon(10 * eps * eps));
  }
}

TEST_CASE("order-5 series match the closed forms for eps <= 0.2") {
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.01 * i;
    CHECK(kappa1_series(100, eps, 5) == Approx(kappa1_exact(100, -1 + eps)).epsilon(1e-3));
    CHECK(kappa3_series(100, eps, 5) == Approx(kappa3_exact(100, -1 + eps)).epsilon(1e-3));
  }
}

TEST_CASE("fitted quadratic correction of kappa3 is negative") {
  // Least squares of kappa3 / (L eps / 8 pi) - 1 = c eps over small depths.
  double num = 0.0, den = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.005 * i;
    const double y = kappa3_exact(8 * pi, -1 + eps) / eps - 1.0;
    num += y * eps;
    den += eps * eps;
  }
  const double c = num / den;
  MESSAGE("fitted quadratic coefficient of kappa3 (units L/8pi): " << c);
  CHECK(c < 0.0);
  CHECK(c == Approx(-(pi - 2) / 4).epsilon(0.05));
}

TEST_CASE("pair statistics are sub-Poissonian at every depth") {
  for (int i = 1; i <= 100; ++i) {
    const double g = -1 + 0.01 * i;
    CHECK(kappa2_exact(100, g) < kappa1_exact(100, g));
    CHECK(kappa3_exact(100, g) < kappa1_exact(100, g));
  }
}

TEST_CASE("kink statistics are super-Poissonian at small depth") {
  for (double eps : {1e-3, 0.01, 0.1}) {
    const double g = -1 + eps;
    CHECK(4 * kappa2_exact(100, g) > 2 * kappa1_exact(100, g));
    CHECK((2 * kappa1_exact(100, g) - 4 * kappa2_exact(100, g)) / (100 * eps) ==
          Approx(1 / (2 * pi) - 0.25).epsilon(0.3));
  }
}

TEST_CASE("exponential ansatz") {
  CHECK(pk_exponential_ansatz(0.0, 7.0) == 1.0);
  CHECK(pk_exponential_ansatz(0.1, 10.0) == Approx(std::exp(-0.1 * pi * std::sqrt(15.0))).epsilon(1e-14));
  CHECK(pk_exponential_ansatz(0.1, 10.0) == Approx(0.2962).epsilon(1e-3));
  CHECK(-std::log(pk_exponential_ansatz(1.0, 1.0)) == Approx(3.8476).epsilon(1e-4));
}

TEST_CASE("slow-driving prefactors") {
  CHECK(kappa_slow_approx(100, 54.6, 1) == Approx(0.5597).epsilon(1e-3));
  CHECK(kappa_slow_approx(100, 7.0, 2) / kappa_slow_approx(100, 7.0, 1) == Approx(0.5).epsilon(1e-15));
  for (int q = 1; q <= 3; ++q) {
    CHECK(kappa_slow_approx(100, 40.0, q) / kappa_slow_approx(100, 10.0, q) == Approx(0.5).epsilon(1e-15));
  }
  CHECK_THROWS_AS(kappa_slow_approx(100, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(kappa_slow_approx(100, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(kappa_slow_approx(100, 0.0, 1), std::invalid_argument);
}
