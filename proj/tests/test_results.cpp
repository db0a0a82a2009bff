#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "qwsearch/results.hpp"

using namespace qwsearch;

namespace {

ResultTable sample_table() {
  ResultTable table;
  table.metadata = {{"tool", "qwsearch test"}, {"walk", "hypercube n=8, marked: 0"}, {std::string(kTimestampKey), "now"}};
  table.columns = {{"series", ColumnType::Text}, {"s", ColumnType::Integer}, {"p", ColumnType::Real}};
  table.rows = {
      {std::string("ideal"), std::int64_t{0}, 0.1},
      {std::string("with,comma \"quoted\""), std::int64_t{-3}, 1.0 / 3.0},
      {std::string(""), std::int64_t{1} << 40, std::numeric_limits<double>::infinity()},
      {std::string("tiny"), std::int64_t{7}, 4.9406564584124654e-324},
      {std::string("neg"), std::int64_t{8}, -std::numeric_limits<double>::infinity()},
      {std::string("nan"), std::int64_t{9}, std::numeric_limits<double>::quiet_NaN()},
      {std::string("zero"), std::int64_t{10}, -0.0},
  };
  return table;
}

ResultTable round_trip(const ResultTable& table, OutputFormat format) {
  std::stringstream buffer;
  emit_results(table, format, buffer);
  return parse_results(buffer, format);
}

}  // namespace

TEST_SUITE("results") {

TEST_CASE("real formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(36.0) == "36");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
}

TEST_CASE("csv layout") {
  std::stringstream out;
  emit_results(sample_table(), OutputFormat::Csv, out);
  std::string line;
  std::getline(out, line);
  CHECK(line == "# tool: qwsearch test");
  std::getline(out, line);
  std::getline(out, line);
  std::getline(out, line);
  CHECK(line == "# types: text,int,real");
  std::getline(out, line);
  CHECK(line == "series,s,p");
  std::getline(out, line);
  CHECK(line == "ideal,0,0.10000000000000001");
  std::getline(out, line);
  CHECK(line == "\"with,comma \"\"quoted\"\"\",-3,0.33333333333333331");
}

TEST_CASE("round trips reproduce the table exactly") {
  const auto table = sample_table();
  CHECK(round_trip(table, OutputFormat::Csv) == table);
  CHECK(round_trip(table, OutputFormat::JsonLines) == table);
}

TEST_CASE("empty table emits the header only") {
  ResultTable table;
  table.metadata = {{"tool", "x"}};
  table.columns = {{"a", ColumnType::Real}};
  std::stringstream out;
  emit_results(table, OutputFormat::Csv, out);
  CHECK(out.str() == "# tool: x\n# types: real\na\n");
  CHECK(round_trip(table, OutputFormat::Csv) == table);
  CHECK(round_trip(table, OutputFormat::JsonLines) == table);
}

TEST_CASE("file output") {
  const auto path = std::filesystem::temp_directory_path() / "qwsearch_results_test.jsonl";
  emit_results(sample_table(), OutputFormat::JsonLines, path);
  std::ifstream in(path);
  CHECK(parse_results(in, OutputFormat::JsonLines) == sample_table());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_results(sample_table(), OutputFormat::Csv, std::filesystem::path("/nonexistent/dir/out.csv")),
                  std::runtime_error);
}

TEST_CASE("malformed input") {
  std::stringstream no_header("# tool: x\n");
  CHECK_THROWS_AS(parse_results(no_header, OutputFormat::Csv), std::runtime_error);
  std::stringstream bad_real("# types: real\na\nabc\n");
  CHECK_THROWS_AS(parse_results(bad_real, OutputFormat::Csv), std::runtime_error);
  std::stringstream wide("# types: int\na\n1,2\n");
  CHECK_THROWS_AS(parse_results(wide, OutputFormat::Csv), std::runtime_error);
  std::stringstream json("{\"metadata\":{},\"columns\":[{\"name\":\"a\",\"type\":\"int\"}]}\n{\"a\":\n");
  CHECK_THROWS_AS(parse_results(json, OutputFormat::JsonLines), std::runtime_error);
}

TEST_CASE("table helpers") {
  auto table = sample_table();
  CHECK(table.column("p") == 2u);
  CHECK_FALSE(table.column("missing"));
  CHECK(table.meta("tool") == "qwsearch test");
  table.set_meta("tool", "other");
  table.set_meta("extra", "1");
  CHECK(table.meta("tool") == "other");
  CHECK(table.metadata.back().first == "extra");
  table.rows.push_back({std::int64_t{1}, std::int64_t{2}, 3.0});
  CHECK_THROWS_AS(table.validate(), std::invalid_argument);
  CHECK(parse_output_format("jsonl") == OutputFormat::JsonLines);
  CHECK_FALSE(parse_output_format("xml"));
}

}
