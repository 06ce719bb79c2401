#include "output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <system_error>

namespace tfim::cli::detail {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_label(double value) {
  char buffer[40];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) return format_number(value);
  return std::string(buffer, end);
}

double checked(double value, std::string_view what) {
  if (!std::isfinite(value)) {
    throw NonFiniteOutputError("non-finite value in output column '" + std::string(what) + "'");
  }
  return value;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) text_ += ',';
    text_ += columns_[i];
  }
  text_ += '\n';
}

void CsvTable::add_row(const std::vector<std::optional<double>>& cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error("row width does not match the table header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    if (cells[i]) text_ += format_number(checked(*cells[i], columns_[i]));
  }
  text_ += '\n';
  rows_.push_back(cells);
}

Json CsvTable::to_json() const {
  Json rows = Json::array();
  for (const auto& cells : rows_) {
    Json row = Json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      row[columns_[i]] = cells[i] ? Json(*cells[i]) : Json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::filesystem::path prepare_output_dir(const RunConfig& config) {
  const std::filesystem::path dir = config.out_dir.value_or(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw OutputError("cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open '" + path.string() + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw OutputError("failed writing '" + path.string() + "'");
}

Json config_to_json(const RunConfig& config) {
  Json j;
  j["sites"] = config.n_sites;
  j["gi"] = config.g_initial;
  j["gf"] = config.g_final ? Json(*config.g_final) : Json(nullptr);
  j["tauq"] = config.tau_q;
  j["eps"] = config.eps;
  j["shots"] = config.shots;
  j["seed"] = config.seed;
  j["rel_tol"] = config.rel_tol;
  j["abs_tol"] = config.abs_tol;
  j["energy_scale"] = config.energy_scale;
  j["format"] = config.format == OutputFormat::csv ? "csv" : "json";
  j["analytic_only"] = config.analytic_only;
  j["fit_window"] = {config.fit_window.lo, config.fit_window.hi};
  return j;
}

Json fit_to_json(const FitReport& fit) {
  Json j;
  j["model"] = fit.model == FitModel::power_law ? "power-law" : "exponential";
  j[fit.model == FitModel::power_law ? "exponent" : "decay_constant"] = fit.parameter;
  j["prefactor"] = fit.prefactor;
  j["residual_rms_log"] = fit.residual;
  j["window"] = {fit.window.lo, fit.window.hi};
  j["points"] = fit.points;
  return j;
}

Json metadata(std::string_view command, std::string_view schema, const RunConfig& config) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

  Json j;
  j["artifact"] = "tfim-fcs";
  j["version"] = std::string(version());
  j["command"] = std::string(command);
  j["schema"] = std::string(schema);
  j["config"] = config_to_json(config);
  j["generated_at"] = stamp;
  return j;
}

}  // namespace tfim::cli::detail
