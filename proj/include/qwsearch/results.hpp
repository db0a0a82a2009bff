/*
 * results.hpp: tabular sweep output
 *
 * CSV: `#`-prefixed "key: value" metadata lines, then one header row of
 * column names, then the rows. The metadata always carries a `types` entry
 * (int | real | text per column) so a file parses back to the same cells.
 *
 * JSON lines: the first line is {"metadata": {...}, "columns": [{"name", "type"}...]},
 * every further line one row object keyed by column name.
 *
 * Reals are written with 17 significant digits; non-finite reals as
 * "inf", "-inf" or "nan" (quoted strings in JSON).
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qwsearch {

enum class ColumnType { Integer, Real, Text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::Real;

  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a column by name, or std::nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
  /// Metadata value by key, or std::nullopt.
  std::optional<std::string> meta(std::string_view key) const;
  void set_meta(std::string key, std::string value);

  /// Throws std::invalid_argument when a row's width or cell types disagree with the columns.
  void validate() const;
};

bool operator==(const ResultTable& a, const ResultTable& b);

enum class OutputFormat { Csv, JsonLines };

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept;

/// Metadata key whose value is excluded from reproducibility comparisons.
inline constexpr std::string_view kTimestampKey = "generated";

/// "%.17g", or inf / -inf / nan.
std::string format_real(double value);

void emit_results(const ResultTable& table, OutputFormat format, std::ostream& out);
void emit_results(const ResultTable& table, OutputFormat format, const std::filesystem::path& path);

/// Throws std::runtime_error on malformed input.
ResultTable parse_results(std::istream& in, OutputFormat format);

}  // namespace qwsearch
