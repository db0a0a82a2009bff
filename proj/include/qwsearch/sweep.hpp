/*
 * sweep.hpp: experiment plans and the figure presets
 *
 * A plan runs one of four experiment shapes:
 *
 *   Trajectory  mean p_marked per step for a few labelled noise settings
 *               columns: series, s, p_marked, stderr
 *   Cost        the same plus c(s) = s / p_s
 *               columns: series, s, p_marked, stderr, cost
 *   Strength    per (noise, dimension, strength): max over the horizon of
 *               mean p_marked and of mean p_unmarked_max
 *   Delta       per (noise, dimension, δ) with strength N^(−δ): the scaled
 *               cost at the noiseless stopping time and its minimum over
 *               the horizon
 *
 * Strength and Delta tables share the long layout
 *   noise, dimension, parameter, statistic, step, value, stderr
 *
 * Stopping time s0: round(π/2·√(2^(n−1))) on the hypercube, the first
 * prominent peak of the noiseless run on the grid. Horizon: 2·s0 unless the
 * plan sets s_max.
 *
 * Every sweep point draws its realizations from derive_seed(seed, dimension),
 * so all strengths at one dimension see the same random numbers.
 */
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qwsearch/noise_kind.hpp"
#include "qwsearch/results.hpp"
#include "qwsearch/state_space.hpp"

namespace qwsearch {

enum class SweepKind { Trajectory, Cost, Strength, Delta };

std::string_view to_string(SweepKind kind) noexcept;

struct SeriesSpec {
  std::string label;
  NoiseKind kind = NoiseKind::None;
  double strength = 0.0;
};

struct SweepPlan {
  std::string id = "custom";
  SweepKind kind = SweepKind::Trajectory;
  Family family = Family::Hypercube;
  std::vector<int> dimensions;     ///< n or side; Trajectory and Cost use exactly one
  std::vector<SeriesSpec> series;  ///< Trajectory and Cost
  std::vector<NoiseKind> noises;   ///< Strength and Delta
  std::vector<double> grid;        ///< strengths or δ values
  int s_max = 0;                   ///< 0 selects the 2·s0 convention
  int realizations = 200;
  std::uint64_t seed = 20240601;
  int workers = 1;
  Index marked = 0;

  /// Throws std::invalid_argument for an empty or non-finite grid, a missing
  /// dimension, an out-of-range strength or an inconsistent field.
  void validate() const;
};

/// Noiseless stopping time s0 of a walk (see file comment).
int stopping_time(const WalkSpec& spec);

/// lo, lo + step, ..., hi with values rounded to 12 decimals.
std::vector<double> linear_grid(double lo, double hi, double step);

/// Runs every point of the plan. Rows come out sorted by their key columns.
ResultTable run_sweep(const SweepPlan& plan);

/// fig1 … fig8.
const std::vector<std::string>& figure_ids();

/// Preset plan for a figure id; throws std::invalid_argument for unknown ids.
SweepPlan figure_plan(std::string_view id);

}  // namespace qwsearch
