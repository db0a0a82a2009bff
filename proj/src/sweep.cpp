#include "qwsearch/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qwsearch/metrics.hpp"
#include "qwsearch/noise.hpp"
#include "qwsearch/version.hpp"
#include "qwsearch/walks.hpp"

namespace qwsearch {

namespace {

WalkSpec make_spec(Family family, int dimension, Index marked) {
  return family == Family::Hypercube ? WalkSpec::hypercube(dimension, marked) : WalkSpec::grid(dimension, marked);
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < count; i += threads) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);
}

std::string short_real(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& render, std::string_view separator = ",") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += separator;
    out += render(items[i]);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

int horizon_for(const SweepPlan& plan, int s0) { return plan.s_max > 0 ? plan.s_max : 2 * s0; }

void sort_rows(ResultTable& table, std::size_t key_columns) {
  std::stable_sort(table.rows.begin(), table.rows.end(), [key_columns](const auto& a, const auto& b) {
    for (std::size_t c = 0; c < key_columns; ++c) {
      if (a[c] < b[c]) return true;
      if (b[c] < a[c]) return false;
    }
    return false;
  });
}

ResultTable run_series(const SweepPlan& plan, const WalkSpec& spec, int horizon) {
  ResultTable table;
  table.columns = {{"series", ColumnType::Text}, {"s", ColumnType::Integer}, {"p_marked", ColumnType::Real},
                   {"stderr", ColumnType::Real}};
  if (plan.kind == SweepKind::Cost) table.columns.push_back({"cost", ColumnType::Real});

  const std::uint64_t point_seed = derive_seed(plan.seed, static_cast<std::uint64_t>(spec.dimension()));
  std::vector<McAggregate> runs(plan.series.size());
  parallel_for(plan.series.size(), plan.workers, [&](std::size_t i) {
    const NoiseSpec noise{plan.series[i].kind, plan.series[i].strength, point_seed};
    runs[i] = monte_carlo(spec, noise, horizon, plan.realizations, point_seed);
  });

  for (std::size_t i = 0; i < plan.series.size(); ++i) {
    const auto& run = runs[i];
    const CostCurve cost = cost_curve(run.mean);
    for (int s = 0; s <= horizon; ++s) {
      const auto k = static_cast<std::size_t>(s);
      std::vector<Cell> row{plan.series[i].label, std::int64_t{s}, run.mean.p_marked[k], run.stderr_marked[k]};
      if (plan.kind == SweepKind::Cost) row.emplace_back(cost.cost[k]);
      table.rows.push_back(std::move(row));
    }
    if (plan.kind == SweepKind::Cost && cost.has_minimum())
      table.set_meta("cost_minimum." + plan.series[i].label,
                     "s=" + std::to_string(cost.s_star) + " cost=" + format_real(cost.c_star));
  }
  return table;
}

struct Point {
  NoiseKind noise;
  std::size_t dimension_index;
  double parameter;
};

ResultTable run_grid(const SweepPlan& plan, const std::vector<WalkSpec>& specs, const std::vector<int>& s0) {
  ResultTable table;
  table.columns = {{"noise", ColumnType::Text},  {"dimension", ColumnType::Integer}, {"parameter", ColumnType::Real},
                   {"statistic", ColumnType::Text}, {"step", ColumnType::Integer},  {"value", ColumnType::Real},
                   {"stderr", ColumnType::Real}};

  std::vector<Point> points;
  for (NoiseKind noise : plan.noises)
    for (std::size_t d = 0; d < specs.size(); ++d)
      for (double x : plan.grid) points.push_back({noise, d, x});

  std::vector<std::vector<std::vector<Cell>>> rows(points.size());
  parallel_for(points.size(), plan.workers, [&](std::size_t i) {
    const Point& point = points[i];
    const WalkSpec& spec = specs[point.dimension_index];
    const int stop = s0[point.dimension_index];
    const int horizon = horizon_for(plan, stop);
    const auto N = static_cast<double>(spec.vertex_count());
    const double strength = plan.kind == SweepKind::Delta ? strength_from_delta(N, point.parameter) : point.parameter;
    const std::uint64_t point_seed = derive_seed(plan.seed, static_cast<std::uint64_t>(spec.dimension()));
    const McAggregate run = monte_carlo(spec, {point.noise, strength, point_seed}, horizon, plan.realizations, point_seed);

    auto emit = [&](std::string statistic, int step, double value, double err) {
      rows[i].push_back({std::string(to_string(point.noise)), std::int64_t{spec.dimension()}, point.parameter,
                         std::move(statistic), std::int64_t{step}, value, err});
    };

    if (plan.kind == SweepKind::Strength) {
      const Peak marked = max_marked(run.mean);
      const Peak unmarked = max_unmarked(run.mean);
      emit("max_marked", marked.step, marked.value, run.stderr_marked[static_cast<std::size_t>(marked.step)]);
      emit("max_unmarked", unmarked.step, unmarked.value, run.stderr_unmarked[static_cast<std::size_t>(unmarked.step)]);
      return;
    }

    const double log_n = std::log(N);
    auto cost_at = [&](int s) {
      const double p = run.mean.p_marked[static_cast<std::size_t>(s)];
      const double err = run.stderr_marked[static_cast<std::size_t>(s)];
      if (!(p > 0)) return std::pair{std::numeric_limits<double>::infinity(), 0.0};
      return std::pair{scaled_cost(s / p, N), err / p / log_n};
    };
    const int at = std::min(stop, horizon);
    const auto [value, err] = cost_at(at);
    emit("scaled_cost", at, value, err);
    const CostCurve curve = cost_curve(run.mean, 1, horizon);
    if (curve.has_minimum()) {
      const auto [min_value, min_err] = cost_at(curve.s_star);
      emit("scaled_cost_min", curve.s_star, min_value, min_err);
    } else {
      emit("scaled_cost_min", 0, std::numeric_limits<double>::infinity(), 0.0);
    }
    emit("strength", 0, strength, 0.0);
  });

  for (auto& chunk : rows)
    for (auto& row : chunk) table.rows.push_back(std::move(row));
  return table;
}

}  // namespace

std::string_view to_string(SweepKind kind) noexcept {
  switch (kind) {
    case SweepKind::Trajectory: return "trajectory";
    case SweepKind::Cost: return "cost";
    case SweepKind::Strength: return "strength";
    case SweepKind::Delta: return "delta";
  }
  return "trajectory";
}

void SweepPlan::validate() const {
  if (dimensions.empty()) throw std::invalid_argument("plan '" + id + "' has no dimensions");
  for (int d : dimensions) make_spec(family, d, marked);
  if (realizations < 1) throw std::invalid_argument("realizations must be at least 1");
  if (s_max < 0) throw std::invalid_argument("s_max must be non-negative");

  if (kind == SweepKind::Trajectory || kind == SweepKind::Cost) {
    if (dimensions.size() != 1) throw std::invalid_argument("trajectory plans take exactly one dimension");
    if (series.empty()) throw std::invalid_argument("plan '" + id + "' has no series");
    for (const auto& s : series) {
      if (s.label.empty()) throw std::invalid_argument("series label must not be empty");
      NoiseSpec{s.kind, s.strength, seed}.validate();
      if (std::count_if(series.begin(), series.end(), [&](const SeriesSpec& o) { return o.label == s.label; }) > 1)
        throw std::invalid_argument("duplicate series label '" + s.label + "'");
    }
    return;
  }

  if (noises.empty()) throw std::invalid_argument("plan '" + id + "' has no noise kinds");
  if (grid.empty()) throw std::invalid_argument("plan '" + id + "' has an empty grid");
  for (double x : grid) {
    if (!std::isfinite(x)) throw std::invalid_argument("grid values must be finite");
    for (NoiseKind noise : noises) {
      for (int d : dimensions) {
        const WalkSpec spec = make_spec(family, d, marked);
        const double strength =
            kind == SweepKind::Delta ? strength_from_delta(static_cast<double>(spec.vertex_count()), x) : x;
        NoiseSpec{noise, strength, seed}.validate();
      }
    }
  }
}

int stopping_time(const WalkSpec& spec) {
  if (spec.family() == Family::Hypercube) return theoretical_stop_skw(spec.dimension());
  const Trajectory ideal = run_walk(spec, {}, akr_step_budget(spec.dimension()));
  if (const auto peak = first_peak(ideal.p_marked)) return peak->step;
  return series_max(ideal.p_marked).step;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("grid needs finite lo ≤ hi and step > 0");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  return out;
}

ResultTable run_sweep(const SweepPlan& input) {
  SweepPlan plan = input;
  plan.validate();
  std::sort(plan.grid.begin(), plan.grid.end());
  plan.grid.erase(std::unique(plan.grid.begin(), plan.grid.end()), plan.grid.end());

  std::vector<WalkSpec> specs;
  std::vector<int> s0;
  for (int d : plan.dimensions) {
    specs.push_back(make_spec(plan.family, d, plan.marked));
    s0.push_back(stopping_time(specs.back()));
  }

  ResultTable table;
  if (plan.kind == SweepKind::Trajectory || plan.kind == SweepKind::Cost) {
    table = run_series(plan, specs.front(), horizon_for(plan, s0.front()));
    sort_rows(table, 2);
  } else {
    table = run_grid(plan, specs, s0);
    sort_rows(table, 4);
  }

  std::vector<std::pair<std::string, std::string>> meta = {
      {"tool", std::string(kToolName) + " " + kVersion},
      {"figure", plan.id},
      {"experiment", std::string(to_string(plan.kind))},
      {"walk", std::string(to_string(plan.family)) + " dimensions=" +
                   join(plan.dimensions, [](int d) { return std::to_string(d); }) + " marked=" + std::to_string(plan.marked)},
  };
  if (plan.kind == SweepKind::Trajectory || plan.kind == SweepKind::Cost) {
    meta.emplace_back("noise", join(plan.series, [](const SeriesSpec& s) {
                        return s.label + "=" + std::string(to_string(s.kind)) + ":" + short_real(s.strength);
                      }, ";"));
  } else {
    meta.emplace_back("noise", join(plan.noises, [](NoiseKind k) { return std::string(to_string(k)); }));
    meta.emplace_back(plan.kind == SweepKind::Delta ? "delta_grid" : "strength_grid", join(plan.grid, short_real));
    if (plan.kind == SweepKind::Delta) meta.emplace_back("strength_rule", "strength = N^(-delta), N = vertex count");
  }
  meta.emplace_back("realizations", std::to_string(plan.realizations));
  meta.emplace_back("seed", std::to_string(plan.seed));
  meta.emplace_back("seed_derivation",
                    "point = splitmix64(seed ^ splitmix64(dimension + 1)); realization r draws from "
                    "mt19937_64(splitmix64(point ^ splitmix64(r + 1))); deterministic settings run once");
  meta.emplace_back("stopping_time", join(specs, [&](const WalkSpec& spec) {
                      const auto k = static_cast<std::size_t>(&spec - specs.data());
                      return std::to_string(spec.dimension()) + "=" + std::to_string(s0[k]);
                    }));
  meta.emplace_back("horizon", plan.s_max > 0 ? "s_max=" + std::to_string(plan.s_max) : "2 x stopping time");
  meta.emplace_back("stopping_time_rule", plan.family == Family::Hypercube
                                              ? "round(pi/2 sqrt(2^(n-1)))"
                                              : "first peak of the noiseless run with prominence >= " + short_real(kRelativeProminence) +
                                                    " of its maximum");
  if (plan.kind == SweepKind::Strength)
    meta.emplace_back("statistics", "max over s in [0, horizon] of mean p_marked and of mean p_unmarked_max, maximized independently");
  if (plan.kind == SweepKind::Delta)
    meta.emplace_back("statistics",
                      "scaled_cost = log_N(s0 / p(s0)); scaled_cost_min = log_N(min over s in [1, horizon] of s / p(s)); "
                      "strength = N^(-delta)");
  meta.emplace_back(std::string(kTimestampKey), utc_timestamp());
  for (auto& [key, value] : table.metadata) meta.emplace_back(key, value);
  table.metadata = std::move(meta);
  return table;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
  return ids;
}

SweepPlan figure_plan(std::string_view id) {
  const std::vector<SeriesSpec> four_models = {
      {"ideal", NoiseKind::None, 0.0},
      {"systematic", NoiseKind::SystematicPhase, 0.3},
      {"gaussian", NoiseKind::GaussianPhase, 0.3},
      {"broken-link", NoiseKind::BrokenLinks, 0.02},
  };
  SweepPlan plan;
  plan.id = std::string(id);
  if (id == "fig1" || id == "fig2") {
    plan.kind = id == "fig1" ? SweepKind::Trajectory : SweepKind::Cost;
    plan.dimensions = {8};
    plan.series = four_models;
    plan.s_max = 60;
  } else if (id == "fig3" || id == "fig6") {
    plan.kind = SweepKind::Strength;
    plan.family = id == "fig3" ? Family::Hypercube : Family::Grid;
    plan.dimensions = id == "fig3" ? std::vector<int>{8, 9, 10} : std::vector<int>{16, 32, 64};
    plan.noises = {NoiseKind::SystematicPhase, NoiseKind::GaussianPhase};
    plan.grid = linear_grid(0.0, 1.0, 0.1);
  } else if (id == "fig4" || id == "fig7") {
    plan.kind = SweepKind::Strength;
    plan.family = id == "fig4" ? Family::Hypercube : Family::Grid;
    plan.dimensions = id == "fig4" ? std::vector<int>{6, 7, 8, 9, 10} : std::vector<int>{8, 16, 32, 64};
    plan.noises = {NoiseKind::BrokenLinks};
    plan.grid = linear_grid(0.0, 0.1, 0.01);
  } else if (id == "fig5" || id == "fig8") {
    plan.kind = SweepKind::Delta;
    plan.family = id == "fig5" ? Family::Hypercube : Family::Grid;
    plan.dimensions = id == "fig5" ? std::vector<int>{8, 9, 10, 11} : std::vector<int>{16, 32, 64};
    plan.noises = {NoiseKind::GaussianPhase};
    plan.grid = linear_grid(-0.3, 1.5, 0.1);
  } else {
    throw std::invalid_argument("unknown figure '" + std::string(id) + "' (expected fig1 ... fig8)");
  }
  return plan;
}

}  // namespace qwsearch
