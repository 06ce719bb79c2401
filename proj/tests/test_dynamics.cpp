#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tfim/dynamics.hpp"
#include "tfim/errors.hpp"

using namespace tfim;
using doctest::Approx;
using std::numbers::pi;

namespace {

double max_sudden_deviation(double tau) {
  const QuenchProtocol p(-1.01, 0.0, tau);
  double worst = 0.0;
  for (double k : build_grid(100)) {
    worst = std::max(worst, std::abs(transition_probability(k, p) - sudden_pk(k, -1.01, 0.0)));
  }
  return worst;
}

}  // namespace

TEST_CASE("settings validation") {
  EvolutionSettings s;
  CHECK_NOTHROW(s.validate());
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.max_steps = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.energy_scale = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("ramps only") {
  CHECK_THROWS_AS(evolve_mode(1.0, QuenchProtocol::sudden(-1.0, 0.0)), SuddenProtocolError);
  CHECK_THROWS_AS(profile_dynamic(build_grid(4), QuenchProtocol::sudden(-1.0, 0.0)), SuddenProtocolError);
}

TEST_CASE("a vanishing ramp leaves the ground state in place") {
  for (double k : {0.3, 1.5, 3.0}) {
    const QuenchProtocol p(-1.2, -1.2 + 1e-9, 1.0);
    CHECK(transition_probability(k, p) < 1e-10);
    const QuenchProtocol flat(-0.4, -0.4, 5.0);
    CHECK(transition_probability(k, flat) < 1e-10);
  }
}

TEST_CASE("norm is preserved along random ramps") {
  oracle::Lcg rng{21};
  for (int i = 0; i < 30; ++i) {
    const double k = rng.uniform(0.01, pi - 0.01);
    const double gi = rng.uniform(-2.0, 0.0);
    const QuenchProtocol p(gi, gi + rng.uniform(0.1, 1.5), rng.uniform(0.01, 30.0));
    const ModeEvolution e = evolve_mode(k, p);
    CHECK(e.max_norm_drift < 1e-9);
    CHECK(std::abs(e.state.norm_squared() - 1.0) < 1e-9);
    CHECK(e.accepted_steps > 0);
  }
}

TEST_CASE("short ramp reproduces the sudden overlap at k = pi/2") {
  const QuenchProtocol p(-1.01, 0.0, 1e-4);
  CHECK(transition_probability(pi / 2, p) == Approx(sudden_pk(pi / 2, -1.01, 0.0)).epsilon(1e-3));
}

TEST_CASE("tau_q = 0.01 agrees with the sudden overlap on the whole grid") {
  CHECK(max_sudden_deviation(0.01) < 1e-2);
}

TEST_CASE("sudden-limit convergence is quadratic in tau_q") {
  // A linear ramp error would give a ratio near 0.1; the measured law is tau^2.
  const double ratio = max_sudden_deviation(1e-4) / max_sudden_deviation(1e-3);
  MESSAGE("error ratio tau=1e-4 / tau=1e-3: " << ratio);
  CHECK(ratio > 0.01 / 3);
  CHECK(ratio < 0.01 * 3);
}

TEST_CASE("tolerance robustness: halving rel_tol moves p_k by < 1e-8") {
  EvolutionSettings fine;
  fine.rel_tol = 0.5e-10;
  for (double tau : {0.07, 5.0, 54.6}) {
    const QuenchProtocol p(-1.01, 0.0, tau);
    for (double k : {pi / 100, 0.5, 2.0, 99 * pi / 100}) {
      CHECK(std::abs(transition_probability(k, p) - transition_probability(k, p, fine)) < 1e-8);
    }
  }
}

TEST_CASE("slow ramps suppress excitations monotonically in tau_q") {
  for (double k : {2.8, 3.0, 99 * pi / 100}) {
    double prev = 1.0;
    for (double tau : {5.0, 20.0, 80.0}) {
      const double p = transition_probability(k, QuenchProtocol(-1.01, 0.0, tau));
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("profile_dynamic: range, order, determinism, thread independence") {
  const MomentumGrid grid = build_grid(100);
  for (double gf : {-0.8, -0.4, 0.0}) {
    const QuenchProtocol p(-1.01, gf, 0.07);
    EvolutionSettings one;
    one.threads = 1;
    EvolutionSettings four;
    four.threads = 4;
    const ExcitationProfile a = profile_dynamic(grid, p, one);
    const ExcitationProfile b = profile_dynamic(grid, p, four);
    const ExcitationProfile c = profile_dynamic(grid, p, four);
    CHECK(a.source() == ProfileSource::dynamic);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i] >= 0.0);
      CHECK(a[i] <= 1.0);
      CHECK(a[i] == b[i]);
      CHECK(b[i] == c[i]);
      CHECK(a[i] == transition_probability(grid[i], p));
    }
  }
}

TEST_CASE("integrator failures are reported with diagnostics") {
  EvolutionSettings tight;
  tight.max_steps = 10;
  try {
    evolve_mode(1.0, QuenchProtocol(-1.01, 0.0, 50.0), tight);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.steps() <= 10);
    CHECK(e.t_reached() < e.t_final());
    CHECK(e.t_final() == Approx(50.5));
  }
}

TEST_CASE("profile_for dispatches on tau_q") {
  const MomentumGrid grid = build_grid(10);
  CHECK(profile_for(grid, QuenchProtocol::sudden(-1.01, 0.0)).source() == ProfileSource::analytic_sudden);
  CHECK(profile_for(grid, QuenchProtocol(-1.01, 0.0, 0.1)).source() == ProfileSource::dynamic);
}
