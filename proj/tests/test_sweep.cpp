#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qwsearch/sweep.hpp"
#include "qwsearch/walks.hpp"

using namespace qwsearch;

namespace {

std::string without_timestamp(const ResultTable& table) {
  std::stringstream out;
  emit_results(table, OutputFormat::Csv, out);
  std::string kept, line;
  const std::string stamp = "# " + std::string(kTimestampKey) + ":";
  while (std::getline(out, line))
    if (line.rfind(stamp, 0) != 0) kept += line + "\n";
  return kept;
}

SweepPlan small_strength_plan() {
  SweepPlan plan;
  plan.kind = SweepKind::Strength;
  plan.dimensions = {5, 6};
  plan.noises = {NoiseKind::BrokenLinks, NoiseKind::GaussianPhase};
  plan.grid = {0.1, 0.0, 0.05};
  plan.realizations = 8;
  return plan;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("linear grid") {
  const auto grid = linear_grid(-0.3, 1.5, 0.1);
  REQUIRE(grid.size() == 19);
  CHECK(grid.front() == -0.3);
  CHECK(grid[3] == 0.0);
  CHECK(grid.back() == 1.5);
  CHECK(linear_grid(0, 0.1, 0.01).size() == 11);
  CHECK_THROWS_AS(linear_grid(1, 0, 0.1), std::invalid_argument);
}

TEST_CASE("stopping times") {
  CHECK(stopping_time(WalkSpec::hypercube(8)) == 18);
  CHECK(stopping_time(WalkSpec::grid(16)) == 22);
}

TEST_CASE("plan validation") {
  SweepPlan plan = small_strength_plan();
  CHECK_NOTHROW(plan.validate());
  plan.grid.clear();
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_strength_plan();
  plan.grid.push_back(NAN);
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_strength_plan();
  plan.grid.push_back(1.5);
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_strength_plan();
  plan.dimensions = {1};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = small_strength_plan();
  plan.kind = SweepKind::Delta;
  plan.grid = {-0.1};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);  // broken-link probability above 1
  plan = SweepPlan{};
  plan.dimensions = {8, 9};
  plan.series = {{"ideal", NoiseKind::None, 0}};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan.dimensions = {8};
  plan.series.push_back({"ideal", NoiseKind::GaussianPhase, 0.1});
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("presets") {
  for (const auto& id : figure_ids()) CHECK_NOTHROW(figure_plan(id).validate());
  CHECK_THROWS_AS(figure_plan("fig9"), std::invalid_argument);
  const auto fig5 = figure_plan("fig5");
  CHECK(fig5.dimensions == std::vector<int>{8, 9, 10, 11});
  CHECK(fig5.grid.size() == 19);
  CHECK(figure_plan("fig8").dimensions == std::vector<int>{16, 32, 64});
  CHECK(figure_plan("fig1").s_max == 60);
}

TEST_CASE("trajectory schema") {
  SweepPlan plan;
  plan.dimensions = {6};
  plan.series = {{"ideal", NoiseKind::None, 0.0}, {"gaussian", NoiseKind::GaussianPhase, 0.3}};
  plan.s_max = 12;
  plan.realizations = 10;
  const auto table = run_sweep(plan);
  REQUIRE(table.columns.size() == 4);
  CHECK(table.columns[0].name == "series");
  CHECK(table.columns[1].name == "s");
  CHECK(table.columns[2].name == "p_marked");
  CHECK(table.columns[3].name == "stderr");
  CHECK(table.rows.size() == 26);
  CHECK(std::get<std::string>(table.rows.front()[0]) == "gaussian");
  for (const char* key : {"tool", "walk", "noise", "realizations", "seed", "horizon", "generated"}) CHECK(table.meta(key));
  const auto ideal = run_walk(WalkSpec::hypercube(6), {}, 12);
  CHECK(std::get<double>(table.rows[13 + 9][2]) == ideal.p_marked[9]);
}

TEST_CASE("cost schema and minimum") {
  const auto table = run_sweep(figure_plan("fig2"));
  CHECK(table.column("cost"));
  CHECK(table.meta("cost_minimum.systematic") == "s=10 cost=46.4520356921104");
}

TEST_CASE("strength sweep rows") {
  const auto table = run_sweep(small_strength_plan());
  CHECK(table.rows.size() == 2 * 2 * 3 * 2);
  CHECK(table.meta("strength_grid") == "0,0.05,0.1");
  const auto& first = table.rows.front();
  CHECK(std::get<std::string>(first[0]) == "broken-link");
  CHECK(std::get<std::int64_t>(first[1]) == 5);
  CHECK(std::get<double>(first[2]) == 0.0);
  CHECK(std::get<std::string>(first[3]) == "max_marked");
  CHECK(std::get<double>(first[6]) == 0.0);
}

TEST_CASE("delta sweep rows") {
  SweepPlan plan;
  plan.kind = SweepKind::Delta;
  plan.dimensions = {6};
  plan.noises = {NoiseKind::GaussianPhase};
  plan.grid = {0.0, 1.0};
  plan.realizations = 6;
  const auto table = run_sweep(plan);
  CHECK(table.rows.size() == 6);
  for (const auto& row : table.rows) {
    if (std::get<std::string>(row[3]) == "strength")
      CHECK(std::get<double>(row[5]) == std::pow(64.0, -std::get<double>(row[2])));
    if (std::get<std::string>(row[3]) == "scaled_cost") CHECK(std::get<std::int64_t>(row[4]) == theoretical_stop_skw(6));
  }
}

TEST_CASE("results do not depend on the worker count and reruns are identical") {
  auto plan = small_strength_plan();
  const auto serial = run_sweep(plan);
  plan.workers = 3;
  const auto parallel = run_sweep(plan);
  CHECK(without_timestamp(serial) == without_timestamp(parallel));
  CHECK(without_timestamp(run_sweep(plan)) == without_timestamp(parallel));
}

}
