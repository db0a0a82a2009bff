#include <doctest.h>

#include <cmath>
#include <random>

#include "qwsearch/metrics.hpp"
#include "qwsearch/oracle.hpp"
#include "qwsearch/walks.hpp"
#include "support.hpp"

using namespace qwsearch;

TEST_SUITE("walks") {

TEST_CASE("noiseless hypercube n=8") {
  const auto traj = run_walk(WalkSpec::hypercube(8), {}, 40);
  REQUIRE(traj.steps() == 40);
  const Peak peak = max_marked(traj);
  CHECK(peak.step == 18);
  CHECK(peak.value == doctest::Approx(0.43447149924737977).epsilon(1e-12));
  CHECK(traj.p_marked[19] == doctest::Approx(traj.p_marked[18]).epsilon(1e-12));
  CHECK(traj.p_marked[0] == doctest::Approx(1.0 / 256).epsilon(1e-14));
}

TEST_CASE("structured trajectory matches powers of the dense step") {
  const auto spec = WalkSpec::hypercube(8);
  const DenseMatrix U = build_algebraic_step(spec, NoiseKind::None, {});
  Eigen::VectorXcd psi = make_uniform_state(spec).amplitudes();
  const auto traj = run_walk(spec, {}, 20);
  for (int s = 1; s <= 20; ++s) {
    psi = U * psi;
    double p = 0;
    for (int c = 0; c < spec.coin_dim(); ++c) p += std::norm(psi[c * spec.vertex_count()]);
    CHECK(std::abs(traj.p_marked[static_cast<std::size_t>(s)] - p) <= 1e-12);
  }
}

TEST_CASE("systematic phase moves the peak earlier") {
  const auto ideal = run_walk(WalkSpec::hypercube(8), {}, 40);
  const auto noisy = run_walk(WalkSpec::hypercube(8), {NoiseKind::SystematicPhase, 0.3}, 40);
  CHECK(first_peak(noisy.p_marked)->step < first_peak(ideal.p_marked)->step);
}

TEST_CASE("zero steps") {
  const auto traj = run_walk(WalkSpec::hypercube(5), {}, 0);
  CHECK(traj.steps() == 0);
  CHECK(traj.p_marked.size() == 1);
  CHECK(traj.p_marked[0] == doctest::Approx(1.0 / 32));
  CHECK_THROWS_AS(run_walk(WalkSpec::hypercube(5), {}, -1), std::invalid_argument);
}

TEST_CASE("probabilities are consistent") {
  const auto traj = run_walk(WalkSpec::grid(8, 9), {NoiseKind::BrokenLinks, 0.1, 3}, 100, 2);
  for (std::size_t s = 0; s < traj.p_marked.size(); ++s) {
    CHECK(traj.p_marked[s] >= 0.0);
    CHECK(traj.p_marked[s] <= 1.0);
    CHECK(traj.p_unmarked_max[s] <= 1.0 - traj.p_marked[s] + 1e-12);
    CHECK(traj.norm_err[s] <= 1e-10);
  }
}

TEST_CASE("noiseless trajectories ignore the seed") {
  const auto spec = WalkSpec::grid(6);
  const auto a = run_walk(spec, {NoiseKind::None, 0.0, 1}, 30, 0);
  const auto b = run_walk(spec, {NoiseKind::None, 0.0, 2}, 30, 5);
  CHECK(a.p_marked == b.p_marked);
  const auto c = run_walk(spec, {NoiseKind::GaussianPhase, 0.0, 9}, 30, 3);
  const auto d = run_walk(spec, {NoiseKind::BrokenLinks, 0.0, 4}, 30, 1);
  CHECK(c.p_marked == a.p_marked);
  CHECK(d.p_marked == a.p_marked);
}

TEST_CASE("small noise converges to the noiseless trajectory") {
  const auto spec = WalkSpec::hypercube(6);
  const auto ideal = run_walk(spec, {}, 30);
  double previous = INFINITY;
  for (double sigma : {0.1, 0.01, 0.001}) {
    const auto noisy = run_walk(spec, {NoiseKind::GaussianPhase, sigma, 7}, 30);
    double gap = 0;
    for (std::size_t s = 0; s < noisy.p_marked.size(); ++s) gap = std::max(gap, std::abs(noisy.p_marked[s] - ideal.p_marked[s]));
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("norm after 1000 noiseless steps") {
  const auto traj = run_walk(WalkSpec::hypercube(8), {}, 1000);
  CHECK(traj.norm_err.back() <= 1e-10);
}

TEST_CASE("theoretical stopping time") {
  CHECK(theoretical_stop_skw(8) == 18);
  CHECK(theoretical_stop_skw(2) == 2);
  CHECK(theoretical_stop_skw(10) == 36);
  CHECK(akr_step_budget(16) == 76);
}

TEST_CASE("initial state is an eigenvector of the unmarked step") {
  CHECK(verify_initial_eigenstate(WalkSpec::hypercube(8)) <= 1e-12);
  CHECK(verify_initial_eigenstate(WalkSpec::grid(16)) <= 1e-12);
  const auto spec = WalkSpec::hypercube(4);
  auto perturbed = make_uniform_state(spec);
  perturbed(1, 3) += 0.05;
  perturbed.amplitudes().normalize();
  CHECK(eigenstate_residual(perturbed) > 1e-3);
}

TEST_CASE("grover baseline") {
  CHECK(run_grover(2, 1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(run_grover(6, 9, 0) == doctest::Approx(1.0 / 64).epsilon(1e-14));
  CHECK(run_grover(10, 123, 25) >= 0.999);
  for (int k = 0; k <= 25; ++k) CHECK(std::abs(run_grover(10, 0, k) - grover_closed_form(1024, k)) <= 1e-10);
  CHECK_THROWS_AS(run_grover(3, 8, 1), std::out_of_range);
}

}
