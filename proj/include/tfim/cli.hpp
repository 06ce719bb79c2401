#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tfim/cumulants.hpp"
#include "tfim/model.hpp"
#include "tfim/scaling.hpp"

namespace tfim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInvalidConfig = 2,
  kExitNumericalFailure = 3,
};

enum class OutputFormat { csv, json };

/// Parameters shared by every subcommand. Unset optionals take the
/// command-specific defaults documented in the README.
struct RunConfig {
  int n_sites = 100;
  double g_initial = -1.01;
  std::optional<double> g_final;
  std::vector<double> tau_q;
  std::vector<double> eps;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double energy_scale = kDefaultEnergyScale;
  unsigned threads = 0;
  std::optional<std::filesystem::path> out_dir;
  OutputFormat format = OutputFormat::csv;
  bool analytic_only = false;
  FitWindow fit_window = kDefaultPowerLawWindow;

  EvolutionSettings settings() const;
};

/// Parses "a,b,c", "lin:lo:hi:n" or "log:lo:hi:n". Throws std::invalid_argument.
std::vector<double> parse_value_list(std::string_view text);

/// Parses "LO:HI". Throws std::invalid_argument.
FitWindow parse_fit_window(std::string_view text);

/// Thrown when an emitted number is NaN or infinite.
class NonFiniteOutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an output file or directory cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each command returns an ExitCode. Progress and summaries go to `log`.
int cmd_sweep_depth(const RunConfig& config, std::ostream& log);
int cmd_sweep_rate(const RunConfig& config, std::ostream& log);
int cmd_fcs(const RunConfig& config, std::ostream& log);

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const;
  const VerifyCheck* find(std::string_view name) const;
};

/// Replaceable implementation paths, so mutation tests can inject faults.
struct VerifyHooks {
  std::function<double(double, double)> kappa1 = kappa1_exact;
  std::function<double(double, double)> kappa3 = kappa3_exact;
};

VerifyReport run_verify(const RunConfig& config, const VerifyHooks& hooks = {});
int cmd_verify(const RunConfig& config, std::ostream& log, const VerifyHooks& hooks = {});

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string_view version() noexcept;

}  // namespace tfim::cli
