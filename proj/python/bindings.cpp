#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "tfim/cli.hpp"
#include "tfim/cumulants.hpp"
#include "tfim/dynamics.hpp"
#include "tfim/fcs.hpp"
#include "tfim/scaling.hpp"
#include "tfim/spectral.hpp"

namespace py = pybind11;
using namespace tfim;

namespace {

std::vector<double> as_vector(const ExcitationProfile& p) {
  return {p.probabilities().begin(), p.probabilities().end()};
}

py::dict triple(const CumulantTriple& c) {
  py::dict d;
  d["kappa1"] = c.kappa1;
  d["kappa2"] = c.kappa2;
  d["kappa3"] = c.kappa3;
  d["convention"] = std::string(to_string(c.convention));
  return d;
}

py::dict fit(const FitReport& f) {
  py::dict d;
  d["parameter"] = f.parameter;
  d["prefactor"] = f.prefactor;
  d["residual"] = f.residual;
  d["window"] = py::make_tuple(f.window.lo, f.window.hi);
  d["points"] = f.points;
  return d;
}

EvolutionSettings settings(double rel_tol, double abs_tol, double energy_scale, unsigned threads) {
  EvolutionSettings s;
  s.rel_tol = rel_tol;
  s.abs_tol = abs_tol;
  s.energy_scale = energy_scale;
  s.threads = threads;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Defect counting statistics of transverse-field Ising quenches";
  m.attr("__version__") = std::string(cli::version());
  m.attr("DEFAULT_ENERGY_SCALE") = kDefaultEnergyScale;

  m.def("momenta", [](int n) {
    const MomentumGrid g = build_grid(n);
    return std::vector<double>(g.begin(), g.end());
  }, py::arg("n_sites"));
  m.def("dispersion", &dispersion, py::arg("k"), py::arg("g"));
  m.def("sudden_pk", &sudden_pk, py::arg("k"), py::arg("g_i"), py::arg("g_f"));
  m.def("sudden_pk_critical", &sudden_pk_critical, py::arg("k"), py::arg("g_f"));
  m.def("sudden_pk_second_order", &sudden_pk_second_order, py::arg("k"), py::arg("g_i"), py::arg("g_f"));

  m.def("sudden_profile", [](int n, double gi, double gf) { return as_vector(profile_sudden(build_grid(n), gi, gf)); },
        py::arg("n_sites"), py::arg("g_i"), py::arg("g_f"));
  m.def("dynamic_profile",
        [](int n, double gi, double gf, double tau, double rel_tol, double abs_tol, double scale, unsigned threads) {
          py::gil_scoped_release release;
          return as_vector(profile_dynamic(build_grid(n), QuenchProtocol(gi, gf, tau),
                                           settings(rel_tol, abs_tol, scale, threads)));
        },
        py::arg("n_sites"), py::arg("g_i"), py::arg("g_f"), py::arg("tau_q"), py::arg("rel_tol") = 1e-10,
        py::arg("abs_tol") = 1e-12, py::arg("energy_scale") = kDefaultEnergyScale, py::arg("threads") = 0u);

  m.def("kappa1_exact", &kappa1_exact, py::arg("L"), py::arg("g_f"));
  m.def("kappa2_exact", &kappa2_exact, py::arg("L"), py::arg("g_f"));
  m.def("kappa3_exact", &kappa3_exact, py::arg("L"), py::arg("g_f"));
  m.def("kappa1_series", &kappa1_series, py::arg("L"), py::arg("eps_f"), py::arg("order"));
  m.def("kappa3_series", &kappa3_series, py::arg("L"), py::arg("eps_f"), py::arg("order"));
  m.def("pk_exponential_ansatz", &pk_exponential_ansatz, py::arg("k"), py::arg("tau_q"));
  m.def("kappa_slow_approx", &kappa_slow_approx, py::arg("L"), py::arg("tau_q"), py::arg("q"));

  m.def("cumulants", [](const std::vector<double>& p) { return triple(cumulants_from_profile(p)); }, py::arg("p"));
  m.def("kink_cumulants", [](const std::vector<double>& p) { return triple(to_kinks(cumulants_from_profile(p))); },
        py::arg("p"));
  m.def("distribution", [](const std::vector<double>& p) {
    const DefectDistribution d = distribution_from_profile(p);
    return std::vector<double>(d.probabilities().begin(), d.probabilities().end());
  }, py::arg("p"));
  m.def("sample_counts", [](const std::vector<double>& p, std::uint64_t shots, std::uint64_t seed) {
    return sample_histogram(p, shots, seed).counts;
  }, py::arg("p"), py::arg("shots"), py::arg("seed"));
  m.def("total_variation", [](const std::vector<double>& a, const std::vector<double>& b) {
    return distribution_distance(a, b).total_variation;
  }, py::arg("p"), py::arg("q"));

  m.def("fit_power_law", [](const std::vector<double>& xs, const std::vector<double>& ys, double lo, double hi) {
    return fit(fit_power_law(xs, ys, {lo, hi}));
  }, py::arg("xs"), py::arg("ys"), py::arg("lo") = kDefaultPowerLawWindow.lo, py::arg("hi") = kDefaultPowerLawWindow.hi);
  m.def("fit_exponential_decay", [](const std::vector<double>& ks, const std::vector<double>& ps) {
    return fit(fit_exponential_decay(ks, ps));
  }, py::arg("ks"), py::arg("ps"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"tfim-fcs"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
