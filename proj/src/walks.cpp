#include "qwsearch/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qwsearch/operators.hpp"

namespace qwsearch {

namespace {

constexpr double kNormAbort = 1e-6;

void record(const WalkerState& state, Trajectory& out) {
  const Eigen::VectorXd probabilities = vertex_probabilities(state);
  const Index marked = state.spec().marked();
  double unmarked_max = 0.0;
  for (Index v = 0; v < probabilities.size(); ++v)
    if (v != marked) unmarked_max = std::max(unmarked_max, probabilities[v]);
  const double drift = std::abs(probabilities.sum() - 1.0);
  if (!(drift <= kNormAbort))
    throw NormError("norm drifted by " + std::to_string(drift) + " after step " + std::to_string(out.p_marked.size()) +
                    " on " + state.spec().describe());
  out.p_marked.push_back(probabilities[marked]);
  out.p_unmarked_max.push_back(unmarked_max);
  out.norm_err.push_back(drift);
}

}  // namespace

Trajectory run_walk(const WalkSpec& spec, const NoiseSpec& noise, int s_max, std::uint64_t realization_index) {
  if (s_max < 0) throw std::invalid_argument("s_max must be non-negative");
  noise.validate();

  Trajectory out;
  out.vertex_count = spec.vertex_count();
  out.p_marked.reserve(static_cast<std::size_t>(s_max) + 1);
  out.p_unmarked_max.reserve(static_cast<std::size_t>(s_max) + 1);
  out.norm_err.reserve(static_cast<std::size_t>(s_max) + 1);

  WalkerState state = make_uniform_state(spec);
  RngStream stream(derive_seed(noise.seed, realization_index));
  StepNoise step_noise;
  record(state, out);
  for (int s = 1; s <= s_max; ++s) {
    realize_step_noise(noise, spec, stream, step_noise);
    step(state, noise.kind, step_noise);
    record(state, out);
  }
  return out;
}

int theoretical_stop_skw(int n) {
  if (n < 1) throw std::invalid_argument("hypercube dimension must be positive");
  return static_cast<int>(std::floor(std::numbers::pi / 2.0 * std::sqrt(std::ldexp(1.0, n - 1)) + 0.5));
}

int akr_step_budget(int side) {
  if (side < 2) throw std::invalid_argument("grid side must be at least 2");
  const double N = static_cast<double>(side) * side;
  return static_cast<int>(std::ceil(2.0 * std::sqrt(N * std::log(N))));
}

double eigenstate_residual(const WalkerState& state) {
  WalkerState evolved = state;
  unmarked_step(evolved);
  return (evolved.amplitudes() - state.amplitudes()).norm();
}

double verify_initial_eigenstate(const WalkSpec& spec) {
  return eigenstate_residual(make_uniform_state(spec));
}

double run_grover(int n_qubits, std::uint64_t i0, int iterations) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("qubit count must lie in [1, 30]");
  if (iterations < 0) throw std::invalid_argument("iteration count must be non-negative");
  const Index N = Index{1} << n_qubits;
  if (i0 >= static_cast<std::uint64_t>(N)) throw std::out_of_range("target index outside the register");
  const auto target = static_cast<Index>(i0);

  Eigen::VectorXd psi = Eigen::VectorXd::Constant(N, 1.0 / std::sqrt(static_cast<double>(N)));
  for (int k = 0; k < iterations; ++k) {
    psi[target] = -psi[target];
    const double twice_mean = 2.0 * psi.mean();
    psi = (-psi).array() + twice_mean;
  }
  return psi[target] * psi[target];
}

double grover_closed_form(double N, int iterations) {
  const double angle = (2.0 * iterations + 1.0) * std::asin(1.0 / std::sqrt(N));
  return std::sin(angle) * std::sin(angle);
}

}  // namespace qwsearch
