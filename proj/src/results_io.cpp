#include "qwsearch/results.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace qwsearch {

namespace {

std::string_view type_name(ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return "int";
    case ColumnType::Real: return "real";
    case ColumnType::Text: return "text";
  }
  return "text";
}

ColumnType parse_type(std::string_view name) {
  if (name == "int") return ColumnType::Integer;
  if (name == "real") return ColumnType::Real;
  if (name == "text") return ColumnType::Text;
  throw std::runtime_error("unknown column type '" + std::string(name) + "'");
}

bool cell_matches(const Cell& cell, ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return std::holds_alternative<std::int64_t>(cell);
    case ColumnType::Real: return std::holds_alternative<double>(cell);
    case ColumnType::Text: return std::holds_alternative<std::string>(cell);
  }
  return false;
}

bool same_cell(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    if (std::isnan(*x)) return std::isnan(y);
    return *x == y && std::signbit(*x) == std::signbit(y);
  }
  return a == b;
}

double parse_real(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  const std::string buffer(text);
  char* end = nullptr;
  const double value = std::strtod(buffer.c_str(), &end);
  if (buffer.empty() || end != buffer.c_str() + buffer.size())
    throw std::runtime_error("malformed real '" + buffer + "'");
  return value;
}

std::int64_t parse_integer(std::string_view text) {
  const std::string buffer(text);
  char* end = nullptr;
  const long long value = std::strtoll(buffer.c_str(), &end, 10);
  if (buffer.empty() || end != buffer.c_str() + buffer.size())
    throw std::runtime_error("malformed integer '" + buffer + "'");
  return value;
}

Cell parse_cell(std::string_view text, ColumnType type) {
  switch (type) {
    case ColumnType::Integer: return parse_integer(text);
    case ColumnType::Real: return parse_real(text);
    case ColumnType::Text: return std::string(text);
  }
  return std::string(text);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  return fields;
}

std::string render_cell(const Cell& cell, OutputFormat format) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) {
    const std::string text = format_real(*d);
    if (format == OutputFormat::Csv) return text;
    if (!std::isfinite(*d)) return '"' + text + '"';
    // Keep integral reals (and -0) from reading back as JSON integers.
    return text.find_first_of(".e") == std::string::npos ? text + ".0" : text;
  }
  const auto& s = std::get<std::string>(cell);
  return format == OutputFormat::Csv ? csv_field(s) : nlohmann::json(s).dump();
}

void emit_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  out << "# types: ";
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << type_name(table.columns[c].type);
  out << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_field(table.columns[c].name);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << render_cell(row[c], OutputFormat::Csv);
    out << '\n';
  }
}

void emit_jsonl(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json header;
  header["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) header["metadata"][key] = value;
  header["columns"] = nlohmann::ordered_json::array();
  for (const auto& column : table.columns)
    header["columns"].push_back({{"name", column.name}, {"type", std::string(type_name(column.type))}});
  out << header.dump() << '\n';
  for (const auto& row : table.rows) {
    out << '{';
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << nlohmann::json(table.columns[c].name).dump() << ':' << render_cell(row[c], OutputFormat::JsonLines);
    out << "}\n";
  }
}

ResultTable parse_csv(std::istream& in) {
  ResultTable table;
  std::vector<ColumnType> types;
  bool have_header = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#' && !have_header) {
      const std::string_view body = std::string_view(line).substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const auto colon = body.find(": ");
      if (colon == std::string_view::npos) throw std::runtime_error("malformed metadata line: " + line);
      const std::string key(body.substr(0, colon));
      const std::string value(body.substr(colon + 2));
      if (key == "types") {
        for (const auto& t : split_csv(value)) types.push_back(parse_type(t));
      } else {
        table.metadata.emplace_back(key, value);
      }
      continue;
    }
    const auto fields = split_csv(line);
    if (!have_header) {
      if (types.size() != fields.size()) throw std::runtime_error("column types do not match the header row");
      for (std::size_t c = 0; c < fields.size(); ++c) table.columns.push_back({fields[c], types[c]});
      have_header = true;
      continue;
    }
    if (fields.size() != table.columns.size()) throw std::runtime_error("row width differs from header: " + line);
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) row.push_back(parse_cell(fields[c], table.columns[c].type));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV input has no header row");
  return table;
}

ResultTable parse_jsonl(std::istream& in) {
  ResultTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto object = nlohmann::json::parse(line);
    if (!have_header) {
      for (const auto& column : object.at("columns"))
        table.columns.push_back({column.at("name").get<std::string>(), parse_type(column.at("type").get<std::string>())});
      // nlohmann::json sorts object keys; keep file order through the ordered variant.
      const auto ordered = nlohmann::ordered_json::parse(line);
      for (const auto& [key, value] : ordered.at("metadata").items()) table.metadata.emplace_back(key, value.get<std::string>());
      have_header = true;
      continue;
    }
    std::vector<Cell> row;
    row.reserve(table.columns.size());
    for (const auto& column : table.columns) {
      const auto& value = object.at(column.name);
      switch (column.type) {
        case ColumnType::Integer: row.emplace_back(value.get<std::int64_t>()); break;
        case ColumnType::Real:
          row.emplace_back(value.is_string() ? parse_real(value.get<std::string>()) : value.get<double>());
          break;
        case ColumnType::Text: row.emplace_back(value.get<std::string>()); break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("JSON-lines input has no header line");
  return table;
}

}  // namespace

std::optional<std::size_t> ResultTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c].name == name) return c;
  return std::nullopt;
}

std::optional<std::string> ResultTable::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return std::nullopt;
}

void ResultTable::set_meta(std::string key, std::string value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata.emplace_back(std::move(key), std::move(value));
}

void ResultTable::validate() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size())
      throw std::invalid_argument("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) + " cells, expected " +
                                  std::to_string(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (!cell_matches(rows[r][c], columns[c].type))
        throw std::invalid_argument("row " + std::to_string(r) + " column '" + columns[c].name + "' has the wrong type");
  }
}

bool operator==(const ResultTable& a, const ResultTable& b) {
  if (a.metadata != b.metadata || a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c)
      if (!same_cell(a.rows[r][c], b.rows[r][c])) return false;
  }
  return true;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "jsonl") return OutputFormat::JsonLines;
  return std::nullopt;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void emit_results(const ResultTable& table, OutputFormat format, std::ostream& out) {
  table.validate();
  if (format == OutputFormat::Csv)
    emit_csv(table, out);
  else
    emit_jsonl(table, out);
}

void emit_results(const ResultTable& table, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_results(table, format, file);
  if (!file.flush()) throw std::runtime_error("failed writing " + path.string());
}

ResultTable parse_results(std::istream& in, OutputFormat format) {
  try {
    return format == OutputFormat::Csv ? parse_csv(in) : parse_jsonl(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON-lines input: ") + e.what());
  }
}

}  // namespace qwsearch
