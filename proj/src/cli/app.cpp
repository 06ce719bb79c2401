#include <charconv>
#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "output.hpp"
#include "tfim/cli.hpp"
#include "tfim/errors.hpp"

namespace tfim::cli {
namespace {

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const std::string& t : tokens) out += (out.empty() ? "" : ",") + t;
  return out;
}

struct RawOptions {
  // Config files deliver comma lists already split into tokens.
  std::vector<std::string> tauq;
  std::vector<std::string> eps;
  std::string fit_window;
  std::string format = "csv";
  double gf = 0.0;
  std::string out;
};

void add_options(CLI::App& sub, RunConfig& cfg, RawOptions& raw) {
  sub.add_option("--sites", cfg.n_sites, "chain length N (even)")->capture_default_str();
  sub.add_option("--gi", cfg.g_initial, "initial field g_i")->capture_default_str();
  sub.add_option("--gf", raw.gf, "final field g_f");
  sub.add_option("--tauq", raw.tauq, "quench time(s): a,b,c | lin:lo:hi:n | log:lo:hi:n");
  sub.add_option("--eps", raw.eps, "depths eps_f = g_f + 1: a,b,c | lin:lo:hi:n");
  sub.add_option("--shots", cfg.shots, "sampled realisations (0 disables sampling)")->capture_default_str();
  sub.add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  sub.add_option("--rel-tol", cfg.rel_tol, "integrator relative tolerance")->capture_default_str();
  sub.add_option("--abs-tol", cfg.abs_tol, "integrator absolute tolerance")->capture_default_str();
  sub.add_option("--energy-scale", cfg.energy_scale, "factor on the mode matrix during evolution")
      ->capture_default_str();
  sub.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
  sub.add_option("--out", raw.out, "output directory");
  sub.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub.add_flag("--analytic-only", cfg.analytic_only, "skip time evolution, use sudden overlaps");
  sub.add_option("--fit-window", raw.fit_window, "power-law fit window LO:HI in tau_q");
}

void finalize(CLI::App& sub, RunConfig& cfg, const RawOptions& raw) {
  if (sub.count("--gf")) cfg.g_final = raw.gf;
  if (!raw.tauq.empty()) cfg.tau_q = parse_value_list(join(raw.tauq));
  if (!raw.eps.empty()) cfg.eps = parse_value_list(join(raw.eps));
  if (!raw.fit_window.empty()) cfg.fit_window = parse_fit_window(raw.fit_window);
  if (!raw.out.empty()) cfg.out_dir = raw.out;
  cfg.format = raw.format == "json" ? OutputFormat::json : OutputFormat::csv;
}

}  // namespace

EvolutionSettings RunConfig::settings() const {
  EvolutionSettings s;
  s.rel_tol = rel_tol;
  s.abs_tol = abs_tol;
  s.energy_scale = energy_scale;
  s.threads = threads;
  return s;
}

std::vector<double> parse_value_list(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 4 && (parts[0] == "lin" || parts[0] == "log")) {
    const double lo = parse_double(parts[1]);
    const double hi = parse_double(parts[2]);
    const double n = parse_double(parts[3]);
    if (n < 2 || n != std::floor(n) || !(hi > lo)) {
      throw std::invalid_argument("range '" + std::string(text) + "' needs HI > LO and an integer count >= 2");
    }
    const bool log = parts[0] == "log";
    if (log && !(lo > 0.0)) throw std::invalid_argument("log range needs LO > 0");
    const int count = static_cast<int>(n);
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      values[i] = log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    values.front() = lo;
    values.back() = hi;
    return values;
  }
  if (parts.size() != 1) throw std::invalid_argument("malformed value list '" + std::string(text) + "'");
  std::vector<double> values;
  for (std::string_view item : split(text, ',')) values.push_back(parse_double(item));
  return values;
}

FitWindow parse_fit_window(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("fit window must be LO:HI");
  const FitWindow w{parse_double(parts[0]), parse_double(parts[1])};
  if (!(w.lo > 0.0) || !(w.hi > w.lo)) throw std::invalid_argument("fit window needs 0 < LO < HI");
  return w;
}

std::string_view version() noexcept { return TFIM_VERSION; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defect counting statistics of transverse-field Ising quenches", "tfim-fcs"};
  app.set_version_flag("--version", std::string(version()));
  app.set_config("--config", "", "key = value file with one [section] per command");
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    RunConfig config;
    RawOptions raw;
    int (*run)(const RunConfig&, std::ostream&);
  };
  std::vector<Command> commands;
  commands.reserve(4);
  const auto verify = [](const RunConfig& c, std::ostream& log) { return cmd_verify(c, log); };
  for (const auto& [name, help, fn] :
       {std::tuple{"sweep-depth", "cumulants versus quench depth", &cmd_sweep_depth},
        std::tuple{"sweep-rate", "cumulants versus quench time with power-law fits", &cmd_sweep_rate},
        std::tuple{"fcs", "full distribution P(n) with Gaussian reference and sampling", &cmd_fcs},
        std::tuple{"verify", "run the internal consistency checks",
                   static_cast<int (*)(const RunConfig&, std::ostream&)>(verify)}}) {
    commands.push_back({app.add_subcommand(name, help), {}, {}, fn});
  }
  for (Command& c : commands) add_options(*c.app, c.config, c.raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidConfig;
  }

  for (Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      finalize(*c.app, c.config, c.raw);
      return c.run(c.config, out);
    } catch (const OutputError& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
      err << "invalid configuration: " << e.what() << '\n';
      return kExitInvalidConfig;
    } catch (const IntegrationError& e) {
      err << "numerical failure: " << e.what() << '\n';
      return kExitNumericalFailure;
    } catch (const std::exception& e) {
      err << "numerical failure: " << e.what() << '\n';
      return kExitNumericalFailure;
    }
  }
  return kExitInvalidConfig;
}

}  // namespace tfim::cli
