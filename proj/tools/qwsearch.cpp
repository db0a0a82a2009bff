#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwsearch/metrics.hpp"
#include "qwsearch/noise.hpp"
#include "qwsearch/oracle.hpp"
#include "qwsearch/results.hpp"
#include "qwsearch/sweep.hpp"
#include "qwsearch/version.hpp"
#include "qwsearch/walks.hpp"

using namespace qwsearch;

namespace {

struct Output {
  std::string path;
  std::string format = "csv";
  int workers = 1;
  int realizations = 200;
  std::uint64_t seed = 20240601;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out", path, "Output file (default: stdout)");
    cmd->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--realizations", realizations, "Monte Carlo realizations for random noise")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Master seed");
  }

  void write(const ResultTable& table) const {
    const OutputFormat fmt = *parse_output_format(format);
    if (path.empty())
      emit_results(table, fmt, std::cout);
    else
      emit_results(table, fmt, std::filesystem::path(path));
  }
};

struct WalkArgs {
  int dimension = 0;
  int steps = 0;
  std::string noise = "none";
  std::optional<double> strength;
  std::optional<double> delta;
  Index marked = 0;
};

// "a,b,c" or "lo:hi:step".
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ':');) parts.push_back(std::stod(item));
    if (parts.size() != 3) throw std::invalid_argument("range '" + text + "' must be lo:hi:step");
    return linear_grid(parts[0], parts[1], parts[2]);
  }
  std::vector<double> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(std::stod(item));
  return out;
}

NoiseKind noise_from(const std::string& name) {
  if (auto kind = parse_noise_kind(name)) return *kind;
  throw std::invalid_argument("unknown noise kind '" + name + "'");
}

void summarize(const ResultTable& table, const WalkSpec& spec) {
  Trajectory traj;
  traj.vertex_count = spec.vertex_count();
  const auto col = *table.column("p_marked");
  for (const auto& row : table.rows) traj.p_marked.push_back(std::get<double>(row[col]));
  const Peak best = max_marked(traj);
  std::cerr << spec.describe() << ": max p_marked " << best.value << " at s=" << best.step;
  if (const auto first = first_peak(traj.p_marked)) std::cerr << ", first peak s=" << first->step;
  const CostCurve cost = cost_curve(traj);
  if (cost.has_minimum()) std::cerr << ", cost minimum " << cost.c_star << " at s=" << cost.s_star << " (log_N " << cost.scaled << ")";
  std::cerr << "\n";
}

void run_walk_command(Family family, const WalkArgs& args, const Output& out) {
  const WalkSpec spec = family == Family::Hypercube ? WalkSpec::hypercube(args.dimension, args.marked)
                                                    : WalkSpec::grid(args.dimension, args.marked);
  const NoiseKind kind = noise_from(args.noise);
  double strength = args.strength.value_or(0.0);
  if (args.delta) strength = strength_from_delta(static_cast<double>(spec.vertex_count()), *args.delta);

  SweepPlan plan;
  plan.id = family == Family::Hypercube ? "skw" : "akr";
  plan.kind = SweepKind::Cost;
  plan.family = family;
  plan.dimensions = {args.dimension};
  plan.series = {{std::string(to_string(kind)), kind, strength}};
  plan.s_max = args.steps;
  plan.realizations = out.realizations;
  plan.seed = out.seed;
  plan.marked = args.marked;
  plan.workers = out.workers;
  const ResultTable table = run_sweep(plan);
  out.write(table);
  summarize(table, spec);
}

int verify(bool quick) {
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok    " : "FAIL  ") << what << "\n";
    if (!ok) ++failures;
  };
  const std::vector<NoiseKind> kinds = {NoiseKind::None,          NoiseKind::SystematicPhase,          NoiseKind::GaussianPhase,
                                        NoiseKind::BrokenLinks,   NoiseKind::UnmarkedSystematicPhase, NoiseKind::UnmarkedGaussianPhase};
  std::vector<WalkSpec> specs = {WalkSpec::hypercube(2), WalkSpec::hypercube(3), WalkSpec::grid(2), WalkSpec::grid(3)};
  if (!quick) {
    specs.push_back(WalkSpec::hypercube(4));
    specs.push_back(WalkSpec::grid(4));
  }
  for (const auto& spec : specs) {
    report(verify_initial_eigenstate(spec) <= 1e-12, spec.describe() + ": uniform state is a +1 eigenvector of U");
    const DenseMatrix U = build_dense_unmarked_step(spec);
    report(unitarity_defect(U) <= 1e-12 && U.imag().cwiseAbs().maxCoeff() == 0.0, spec.describe() + ": U is real and unitary");
    for (NoiseKind kind : kinds) {
      const double strength = kind == NoiseKind::BrokenLinks ? 0.1 : 0.3;
      const double deviation = compare_structured_vs_dense(spec, 50, {kind, strength, 7}, 11);
      std::ostringstream what;
      what << spec.describe() << ": structured vs dense, " << to_string(kind) << ", 50 steps (" << deviation << ")";
      report(deviation <= 1e-12, what.str());
    }
  }
  const WalkSpec n6 = WalkSpec::hypercube(6);
  const Eigenphase phase = smallest_eigenphase(build_dense_step(n6, NoiseKind::None, {}));
  const Trajectory traj = run_walk(n6, {}, 40);
  const auto peak = first_peak(traj.p_marked);
  const bool close = peak && std::min(std::abs(peak->step - phase.stopping_time), std::abs(peak->last_step - phase.stopping_time)) <= 1;
  report(close, "hypercube n=6: ceil(pi/2 alpha) = " + std::to_string(phase.stopping_time) + " vs empirical peak s=" +
                    (peak ? std::to_string(peak->step) + ".." + std::to_string(peak->last_step) : std::string("none")));
  std::cout << (failures ? std::to_string(failures) + " check(s) failed" : std::string("all checks passed")) << "\n";
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-walk search simulator"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  WalkArgs skw_args, akr_args;
  Output skw_out, akr_out;
  auto add_walk_options = [](CLI::App* cmd, WalkArgs& args) {
    cmd->add_option("--steps", args.steps, "Number of steps (default: twice the noiseless stopping time)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--noise", args.noise, "none, systematic, gaussian, broken-link, unmarked-systematic, unmarked-gaussian");
    auto* strength = cmd->add_option("--strength", args.strength, "theta, sigma or p");
    cmd->add_option("--delta", args.delta, "Use strength N^(-delta)")->excludes(strength);
    cmd->add_option("--marked", args.marked, "Marked vertex label");
  };

  auto* skw = app.add_subcommand("skw", "Hypercube search walk");
  skw->add_option("--n", skw_args.dimension, "Hypercube dimension")->required();
  add_walk_options(skw, skw_args);
  skw_out.add_to(skw);

  auto* akr = app.add_subcommand("akr", "Two-dimensional grid search walk");
  akr->add_option("--side", akr_args.dimension, "Grid side")->required();
  add_walk_options(akr, akr_args);
  akr_out.add_to(akr);

  int grover_n = 10;
  std::optional<int> grover_steps;
  std::uint64_t grover_marked = 0;
  std::string grover_path, grover_format = "csv";
  auto* grover = app.add_subcommand("grover", "Grover search baseline");
  grover->add_option("--n", grover_n, "Number of qubits")->check(CLI::Range(1, 26));
  grover->add_option("--steps", grover_steps, "Iterations (default: floor(pi/4 sqrt N))")->check(CLI::NonNegativeNumber);
  grover->add_option("--marked", grover_marked, "Marked item");
  grover->add_option("--out", grover_path, "Output file (default: stdout)");
  grover->add_option("--format", grover_format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  std::vector<int> sweep_n, sweep_side;
  std::vector<std::string> sweep_noise = {"gaussian"};
  std::string sweep_strength, sweep_delta;
  int sweep_steps = 0;
  Index sweep_marked = 0;
  Output sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Noise-strength or delta sweep");
  auto* sweep_n_opt = sweep->add_option("--n", sweep_n, "Hypercube dimensions")->delimiter(',');
  sweep->add_option("--side", sweep_side, "Grid sides")->delimiter(',')->excludes(sweep_n_opt);
  sweep->add_option("--noise", sweep_noise, "Noise kinds")->delimiter(',');
  auto* strength_opt = sweep->add_option("--strength", sweep_strength, "Strengths: a,b,c or lo:hi:step");
  sweep->add_option("--delta", sweep_delta, "Delta grid: a,b,c or lo:hi:step")->excludes(strength_opt);
  sweep->add_option("--steps", sweep_steps, "Horizon (default: twice the noiseless stopping time)")->check(CLI::NonNegativeNumber);
  sweep->add_option("--marked", sweep_marked, "Marked vertex label");
  sweep_out.add_to(sweep);

  std::string figure_id;
  Output figure_out;
  auto* figure = app.add_subcommand("figure", "Run a figure preset");
  figure->add_option("id", figure_id, "fig1 ... fig8")->required();
  figure_out.add_to(figure);

  bool verify_quick = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check the structured operators against dense matrices");
  verify_cmd->add_flag("--quick", verify_quick, "Skip the n=4 and side=4 instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*skw) {
      run_walk_command(Family::Hypercube, skw_args, skw_out);
    } else if (*akr) {
      run_walk_command(Family::Grid, akr_args, akr_out);
    } else if (*grover) {
      const double N = std::ldexp(1.0, grover_n);
      const int k_max = grover_steps.value_or(static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(N))));
      if (grover_marked >= (std::uint64_t{1} << grover_n)) throw std::out_of_range("marked item outside [0, 2^n)");
      ResultTable table;
      table.metadata = {{"tool", std::string(kToolName) + " " + kVersion},
                        {"experiment", "grover"},
                        {"qubits", std::to_string(grover_n)},
                        {"marked", std::to_string(grover_marked)}};
      table.columns = {{"k", ColumnType::Integer}, {"p_success", ColumnType::Real}, {"closed_form", ColumnType::Real}};
      for (int k = 0; k <= k_max; ++k)
        table.rows.push_back({std::int64_t{k}, run_grover(grover_n, grover_marked, k), grover_closed_form(N, k)});
      const OutputFormat fmt = *parse_output_format(grover_format);
      if (grover_path.empty())
        emit_results(table, fmt, std::cout);
      else
        emit_results(table, fmt, std::filesystem::path(grover_path));
    } else if (*sweep) {
      SweepPlan plan;
      plan.family = sweep_side.empty() ? Family::Hypercube : Family::Grid;
      plan.dimensions = sweep_side.empty() ? sweep_n : sweep_side;
      for (const auto& name : sweep_noise) plan.noises.push_back(noise_from(name));
      plan.kind = sweep_delta.empty() ? SweepKind::Strength : SweepKind::Delta;
      plan.grid = parse_grid(sweep_delta.empty() ? (sweep_strength.empty() ? "0:1:0.1" : sweep_strength) : sweep_delta);
      plan.s_max = sweep_steps;
      plan.marked = sweep_marked;
      plan.realizations = sweep_out.realizations;
      plan.seed = sweep_out.seed;
      plan.workers = sweep_out.workers;
      sweep_out.write(run_sweep(plan));
    } else if (*figure) {
      SweepPlan plan = figure_plan(figure_id);
      plan.realizations = figure_out.realizations;
      plan.seed = figure_out.seed;
      plan.workers = figure_out.workers;
      figure_out.write(run_sweep(plan));
    } else if (*verify_cmd) {
      return verify(verify_quick);
    }
  } catch (const std::exception& e) {
    std::cerr << "qwsearch: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
