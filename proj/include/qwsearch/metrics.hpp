#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qwsearch/noise.hpp"
#include "qwsearch/walks.hpp"

namespace qwsearch {

/// c(s) = s / p_s, the expected number of steps spent when every run is
/// measured after s steps and repeated until it succeeds.
struct CostCurve {
  std::vector<double> cost;  ///< indexed by s; entry 0 and entries with p_s = 0 are +inf
  int s_star = 0;            ///< argmin over the evaluated window, 0 when no finite entry exists
  double c_star = std::numeric_limits<double>::infinity();
  double scaled = std::numeric_limits<double>::infinity();  ///< log_N(c_star)

  bool has_minimum() const noexcept { return s_star > 0; }
};

/// Cost of every step, minimized over s ∈ [first_step, last_step] (clamped to
/// the trajectory). Zero-probability entries are infinite and never chosen.
CostCurve cost_curve(const Trajectory& traj, int first_step = 1, int last_step = std::numeric_limits<int>::max());

/// ln(c_star) / ln(N).
double scaled_cost(double c_star, double N);

struct Peak {
  double value = 0.0;
  int step = 0;            ///< first step of the peak
  int last_step = 0;       ///< last step of a flat top (== step for a sharp peak)
  double prominence = 0.0;
};

/// Probabilities closer than this are treated as one flat top. Bipartite
/// lattices produce exact pairs p_2k = p_2k+1 up to rounding.
inline constexpr double kPlateauTolerance = 1e-12;

/// Global maximum of a series; the earliest step wins ties.
Peak series_max(std::span<const double> series);

Peak max_marked(const Trajectory& traj);
Peak max_unmarked(const Trajectory& traj);

/// Interior local maxima (flat tops allowed) whose topographic prominence is
/// at least `min_prominence`. A rise that runs into the end of the series is
/// not a peak.
std::vector<Peak> find_peaks(std::span<const double> series, double min_prominence = 0.0);

/// Default prominence threshold, relative to the series maximum, used to
/// separate real peaks from the period-2 sawtooth of noisy runs and from
/// small ripples on the grid.
inline constexpr double kRelativeProminence = 0.05;

/// First peak with prominence ≥ relative_prominence · max(series).
std::optional<Peak> first_peak(std::span<const double> series, double relative_prominence = kRelativeProminence);

/// First and second such peaks (the second may be absent).
std::vector<Peak> leading_peaks(std::span<const double> series, std::size_t count,
                                double relative_prominence = kRelativeProminence);

/// Monte Carlo ensemble statistics per step.
struct McAggregate {
  Trajectory mean;
  std::vector<double> stderr_marked;    ///< sample std / √R of p_marked
  std::vector<double> stderr_unmarked;  ///< sample std / √R of p_unmarked_max
  int realizations = 0;
};

/// Runs R realizations with streams derived from master_seed and averages
/// them step by step. Deterministic noise models are simulated once.
/// `workers` threads share the realizations; the result does not depend on it.
McAggregate monte_carlo(const WalkSpec& spec, NoiseSpec noise, int s_max, int realizations,
                        std::uint64_t master_seed, int workers = 1);

}  // namespace qwsearch
