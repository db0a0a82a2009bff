#include <doctest.h>

#include <cmath>

#include "qwsearch/metrics.hpp"

using namespace qwsearch;

namespace {

Trajectory from_series(std::vector<double> p, Index vertices = 256) {
  Trajectory traj;
  traj.vertex_count = vertices;
  traj.p_unmarked_max.assign(p.size(), 0.0);
  traj.norm_err.assign(p.size(), 0.0);
  traj.p_marked = std::move(p);
  return traj;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("cost curve arithmetic") {
  std::vector<double> p(19, 0.01);
  p[18] = 0.5;
  const auto curve = cost_curve(from_series(p));
  CHECK(curve.cost[18] == 36.0);
  CHECK(std::isinf(curve.cost[0]));
  CHECK(curve.s_star == 18);
  CHECK(curve.c_star == 36.0);
  CHECK(curve.scaled == doctest::Approx(std::log(36.0) / std::log(256.0)));
  for (std::size_t s = 1; s < p.size(); ++s) CHECK(curve.cost[s] * p[s] == doctest::Approx(static_cast<double>(s)).epsilon(1e-15));
}

TEST_CASE("zero probabilities are skipped") {
  const auto curve = cost_curve(from_series({0.1, 0.0, 0.0, 0.3, 0.0}));
  CHECK(std::isinf(curve.cost[1]));
  CHECK(curve.s_star == 3);
  const auto none = cost_curve(from_series({0.1, 0.0, 0.0}));
  CHECK_FALSE(none.has_minimum());
  CHECK(std::isinf(none.c_star));
  CHECK_THROWS_AS(cost_curve(from_series({0.1})), std::invalid_argument);
}

TEST_CASE("cost window") {
  const auto curve = cost_curve(from_series({0.0, 0.9, 0.1, 0.2, 0.6}), 2, 3);
  CHECK(curve.s_star == 3);
  CHECK(curve.c_star == 15.0);
}

TEST_CASE("systematic phase cost minimum") {
  const auto traj = run_walk(WalkSpec::hypercube(8), {NoiseKind::SystematicPhase, 0.3}, 60);
  const auto curve = cost_curve(traj);
  CHECK(curve.s_star >= 8);
  CHECK(curve.s_star <= 12);
  CHECK(curve.s_star == 10);
  CHECK(curve.c_star == doctest::Approx(46.4520356921104).epsilon(1e-10));
}

TEST_CASE("scaled cost") {
  CHECK(scaled_cost(256, 256) == doctest::Approx(1.0));
  CHECK(scaled_cost(16, 256) == doctest::Approx(0.5));
  CHECK(scaled_cost(40, 256) > scaled_cost(40, 1024));
  CHECK_THROWS_AS(scaled_cost(4, 1), std::invalid_argument);
}

TEST_CASE("maxima") {
  const auto ideal = run_walk(WalkSpec::hypercube(8), {}, 40);
  CHECK(max_unmarked(ideal).value < 0.25 * max_marked(ideal).value);
  const auto start = run_walk(WalkSpec::hypercube(8), {}, 0);
  CHECK(max_unmarked(start).value == doctest::Approx(1.0 / 256));
  CHECK(max_unmarked(start).step == 0);

  const auto washed = run_walk(WalkSpec::hypercube(8), {NoiseKind::SystematicPhase, 2.5}, 80);
  CHECK(max_unmarked(washed).value > 0.5 * max_marked(washed).value);
}

TEST_CASE("peak detection") {
  SUBCASE("flat tops") {
    const std::vector<double> series = {0.0, 0.2, 0.5, 0.5, 0.1, 0.3, 0.3, 0.0};
    const auto peaks = find_peaks(series);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].step == 2);
    CHECK(peaks[0].last_step == 3);
    CHECK(peaks[1].step == 5);
    CHECK(peaks[1].prominence == doctest::Approx(0.2));
  }
  SUBCASE("a rise into the end is not a peak") {
    CHECK(find_peaks(std::vector<double>{0.1, 0.2, 0.3}).empty());
    CHECK(find_peaks(std::vector<double>{0.1, 0.2, 0.2}).empty());
  }
  SUBCASE("small wiggles are filtered by prominence") {
    const std::vector<double> series = {0.0, 0.01, 0.005, 0.4, 0.1, 0.0};
    CHECK(find_peaks(series).size() == 2);
    const auto first = first_peak(series);
    REQUIRE(first);
    CHECK(first->step == 3);
  }
  SUBCASE("noiseless hypercube plateau") {
    const auto traj = run_walk(WalkSpec::hypercube(8), {}, 40);
    const auto first = first_peak(traj.p_marked);
    REQUIRE(first);
    CHECK(first->step == 18);
    CHECK(first->last_step == 19);
  }
  SUBCASE("noiseless grid first peaks") {
    const auto traj = run_walk(WalkSpec::grid(16), {}, akr_step_budget(16));
    const auto first = first_peak(traj.p_marked);
    REQUIRE(first);
    CHECK(first->step == 22);
    CHECK(first->value == doctest::Approx(0.25593616244441364).epsilon(1e-10));
  }
}

TEST_CASE("monte carlo aggregates") {
  const auto spec = WalkSpec::hypercube(6);
  SUBCASE("one realization") {
    const NoiseSpec noise{NoiseKind::BrokenLinks, 0.05, 0};
    const auto agg = monte_carlo(spec, noise, 20, 1, 77);
    const auto single = run_walk(spec, {NoiseKind::BrokenLinks, 0.05, 77}, 20, 0);
    CHECK(agg.mean.p_marked == single.p_marked);
    for (double e : agg.stderr_marked) CHECK(e == 0.0);
  }
  SUBCASE("deterministic input has zero spread") {
    const auto agg = monte_carlo(spec, {NoiseKind::SystematicPhase, 0.3}, 20, 50, 1);
    for (double e : agg.stderr_marked) CHECK(e == 0.0);
    CHECK(agg.realizations == 50);
  }
  SUBCASE("worker count does not change the result") {
    const NoiseSpec noise{NoiseKind::GaussianPhase, 0.4, 0};
    const auto a = monte_carlo(spec, noise, 25, 12, 3, 1);
    const auto b = monte_carlo(spec, noise, 25, 12, 3, 4);
    CHECK(a.mean.p_marked == b.mean.p_marked);
    CHECK(a.stderr_marked == b.stderr_marked);
  }
  SUBCASE("means are probabilities") {
    const auto agg = monte_carlo(spec, {NoiseKind::BrokenLinks, 0.2, 0}, 30, 20, 9);
    for (std::size_t s = 0; s < agg.mean.p_marked.size(); ++s) {
      CHECK(agg.mean.p_marked[s] >= 0.0);
      CHECK(agg.mean.p_marked[s] <= 1.0);
      CHECK(agg.stderr_marked[s] >= 0.0);
    }
  }
  CHECK_THROWS_AS(monte_carlo(spec, {}, 10, 0, 1), std::invalid_argument);
}

TEST_CASE("broken links keep the first peak and attenuate the rest") {
  const auto spec = WalkSpec::hypercube(8);
  const auto ideal = first_peak(run_walk(spec, {}, 100).p_marked);
  const auto agg = monte_carlo(spec, {NoiseKind::BrokenLinks, 0.02, 0}, 100, 200, 20240601);
  const auto peaks = leading_peaks(agg.mean.p_marked, 2);
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(peaks[0].step - ideal->step) <= 1);
  CHECK(peaks[0].value < ideal->value);
  CHECK(peaks[1].value < peaks[0].value);
}

}
