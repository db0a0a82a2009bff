#include "qwsearch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qwsearch {

CostCurve cost_curve(const Trajectory& traj, int first_step, int last_step) {
  if (traj.steps() < 1) throw std::invalid_argument("cost curve needs at least one step");
  CostCurve out;
  const std::size_t length = traj.p_marked.size();
  out.cost.assign(length, std::numeric_limits<double>::infinity());
  for (std::size_t s = 1; s < length; ++s)
    if (traj.p_marked[s] > 0) out.cost[s] = static_cast<double>(s) / traj.p_marked[s];

  const int lo = std::max(first_step, 1);
  const int hi = std::min(last_step, traj.steps());
  for (int s = lo; s <= hi; ++s) {
    if (out.cost[static_cast<std::size_t>(s)] < out.c_star) {
      out.c_star = out.cost[static_cast<std::size_t>(s)];
      out.s_star = s;
    }
  }
  if (out.has_minimum() && traj.vertex_count >= 2)
    out.scaled = scaled_cost(out.c_star, static_cast<double>(traj.vertex_count));
  return out;
}

double scaled_cost(double c_star, double N) {
  if (!(N > 1)) throw std::invalid_argument("scaled cost needs N > 1");
  return std::log(c_star) / std::log(N);
}

Peak series_max(std::span<const double> series) {
  Peak best;
  if (series.empty()) return best;
  best.value = series[0];
  best.step = best.last_step = 0;
  for (std::size_t s = 1; s < series.size(); ++s)
    if (series[s] > best.value) best = {series[s], static_cast<int>(s), static_cast<int>(s), 0.0};
  return best;
}

Peak max_marked(const Trajectory& traj) { return series_max(traj.p_marked); }
Peak max_unmarked(const Trajectory& traj) { return series_max(traj.p_unmarked_max); }

std::vector<Peak> find_peaks(std::span<const double> series, double min_prominence) {
  std::vector<Peak> out;
  const std::size_t n = series.size();
  auto same = [](double a, double b) { return std::abs(a - b) <= kPlateauTolerance; };
  std::size_t i = 1;
  while (i < n) {
    if (!(series[i] > series[i - 1]) || same(series[i], series[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && same(series[j + 1], series[i])) ++j;
    if (j + 1 == n) break;
    if (series[j + 1] < series[i]) {
      const double top = series[i];
      double left_base = top;
      for (std::size_t k = i; k-- > 0 && !(series[k] > top + kPlateauTolerance);) left_base = std::min(left_base, series[k]);
      double right_base = top;
      for (std::size_t k = j + 1; k < n && !(series[k] > top + kPlateauTolerance); ++k) right_base = std::min(right_base, series[k]);
      const double prominence = top - std::max(left_base, right_base);
      if (prominence >= min_prominence)
        out.push_back({top, static_cast<int>(i), static_cast<int>(j), prominence});
    }
    i = j + 1;
  }
  return out;
}

std::vector<Peak> leading_peaks(std::span<const double> series, std::size_t count, double relative_prominence) {
  if (series.empty()) return {};
  auto peaks = find_peaks(series, relative_prominence * series_max(series).value);
  if (peaks.size() > count) peaks.resize(count);
  return peaks;
}

std::optional<Peak> first_peak(std::span<const double> series, double relative_prominence) {
  auto peaks = leading_peaks(series, 1, relative_prominence);
  if (peaks.empty()) return std::nullopt;
  return peaks.front();
}

McAggregate monte_carlo(const WalkSpec& spec, NoiseSpec noise, int s_max, int realizations,
                        std::uint64_t master_seed, int workers) {
  if (realizations < 1) throw std::invalid_argument("at least one realization is required");
  noise.seed = master_seed;
  noise.validate();

  McAggregate out;
  out.realizations = realizations;
  const std::size_t length = static_cast<std::size_t>(s_max) + 1;

  if (noise.deterministic()) {
    out.mean = run_walk(spec, noise, s_max, 0);
    out.stderr_marked.assign(length, 0.0);
    out.stderr_unmarked.assign(length, 0.0);
    return out;
  }

  std::vector<Trajectory> runs(static_cast<std::size_t>(realizations));
  const int threads = std::clamp(workers, 1, realizations);
  auto work = [&](int first) {
    for (int r = first; r < realizations; r += threads)
      runs[static_cast<std::size_t>(r)] = run_walk(spec, noise, s_max, static_cast<std::uint64_t>(r));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  out.mean.vertex_count = spec.vertex_count();
  out.mean.p_marked.assign(length, 0.0);
  out.mean.p_unmarked_max.assign(length, 0.0);
  out.mean.norm_err.assign(length, 0.0);
  for (const auto& run : runs) {
    for (std::size_t s = 0; s < length; ++s) {
      out.mean.p_marked[s] += run.p_marked[s];
      out.mean.p_unmarked_max[s] += run.p_unmarked_max[s];
      out.mean.norm_err[s] = std::max(out.mean.norm_err[s], run.norm_err[s]);
    }
  }
  const double R = realizations;
  for (std::size_t s = 0; s < length; ++s) {
    out.mean.p_marked[s] /= R;
    out.mean.p_unmarked_max[s] /= R;
  }

  out.stderr_marked.assign(length, 0.0);
  out.stderr_unmarked.assign(length, 0.0);
  if (realizations > 1) {
    for (std::size_t s = 0; s < length; ++s) {
      double ss_marked = 0.0;
      double ss_unmarked = 0.0;
      for (const auto& run : runs) {
        ss_marked += (run.p_marked[s] - out.mean.p_marked[s]) * (run.p_marked[s] - out.mean.p_marked[s]);
        ss_unmarked += (run.p_unmarked_max[s] - out.mean.p_unmarked_max[s]) *
                       (run.p_unmarked_max[s] - out.mean.p_unmarked_max[s]);
      }
      out.stderr_marked[s] = std::sqrt(ss_marked / (R - 1) / R);
      out.stderr_unmarked[s] = std::sqrt(ss_unmarked / (R - 1) / R);
    }
  }
  return out;
}

}  // namespace qwsearch
