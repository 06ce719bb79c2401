#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tfim/cli.hpp"

namespace tfim::cli::detail {

using Json = nlohmann::ordered_json;

/// 17 significant digits, so values round-trip exactly.
std::string format_number(double value);

/// Shortest round-trip representation, used in file names.
std::string format_label(double value);

/// Throws NonFiniteOutputError naming `what` when value is NaN or infinite.
double checked(double value, std::string_view what);

/// Comma-separated table; missing cells are left empty.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<std::optional<double>>& cells);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::string str() const { return text_; }

  /// Rows as an array of objects keyed by column name.
  Json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::optional<double>>> rows_;
  std::string text_;
};

std::filesystem::path prepare_output_dir(const RunConfig& config);
void write_text(const std::filesystem::path& path, std::string_view text);

Json config_to_json(const RunConfig& config);
Json fit_to_json(const FitReport& fit);

/// Common metadata block; the only nondeterministic field is generated_at.
Json metadata(std::string_view command, std::string_view schema, const RunConfig& config);

}  // namespace tfim::cli::detail
