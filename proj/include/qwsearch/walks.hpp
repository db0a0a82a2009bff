#pragma once

#include <cstdint>
#include <vector>

#include "qwsearch/noise.hpp"
#include "qwsearch/state_space.hpp"

namespace qwsearch {

/// Per-step statistics of one walk; entry 0 describes the initial state and
/// entry s the state after s applications of U′.
struct Trajectory {
  std::vector<double> p_marked;        ///< probability at the marked vertex
  std::vector<double> p_unmarked_max;  ///< largest probability over the unmarked vertices
  std::vector<double> norm_err;        ///< |Σ|ψ|² − 1|
  Index vertex_count = 0;

  int steps() const noexcept { return static_cast<int>(p_marked.size()) - 1; }
};

/// Evolves the uniform state through `s_max` noisy steps, recording
/// statistics after each shift. The realization draws its noise from
/// derive_seed(noise.seed, realization_index). Throws NormError if the norm
/// drifts by more than 1e−6.
Trajectory run_walk(const WalkSpec& spec, const NoiseSpec& noise, int s_max, std::uint64_t realization_index = 0);

/// round(π/2 · √(2^(n−1))), halves rounded up.
int theoretical_stop_skw(int n);

/// Default AKR step budget ⌈2√(N ln N)⌉.
int akr_step_budget(int side);

/// ‖U|ψ⟩ − |ψ⟩‖ for the unmarked noiseless step U.
double eigenstate_residual(const WalkerState& state);

/// eigenstate_residual of the uniform initial state.
double verify_initial_eigenstate(const WalkSpec& spec);

/// Success probability |⟨i0|ψ⟩|² of Grover's algorithm after `iterations`
/// rounds of (2|s⟩⟨s| − I)·O on n qubits. The oracle O is the phase flip on
/// |i0⟩ that U_f induces when its ancilla is prepared in |−⟩.
double run_grover(int n_qubits, std::uint64_t i0, int iterations);

/// sin²((2k+1)·arcsin(1/√N)).
double grover_closed_form(double N, int iterations);

}  // namespace qwsearch
