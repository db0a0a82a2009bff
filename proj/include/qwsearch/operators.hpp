/*
 * operators.hpp: matrix-free coin and shift kernels
 *
 * All kernels act in place on a BasicWalkerState and preserve its norm
 * exactly up to rounding. Coins work on the vertex_count × coin_dim block
 * view; shifts are products of disjoint 2-cycles, so every shift is its own
 * inverse for a fixed LinkSet.
 *
 * Broken links: each shift pairs basis states across a lattice edge. When the
 * edge is broken that pair is left untouched (identity on both states, no
 * coin or orientation flip), which keeps the shift a permutation.
 */
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qwsearch/link_set.hpp"
#include "qwsearch/noise_kind.hpp"
#include "qwsearch/state_space.hpp"

namespace qwsearch {

/// Per-step noise realization.
struct StepNoise {
  double phase = 0.0;  ///< effective θ in [−π, π]
  LinkSet links;       ///< edges broken during this step
};

/// Maps θ into [−π, π].
inline double wrap_phase(double theta) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (theta >= -std::numbers::pi && theta <= std::numbers::pi) return theta;
  return std::remainder(theta, two_pi);
}

namespace detail {

/// e^{i(π+θ)} written as −e^{iθ}, so θ = 0 gives exactly −1.
template <typename Real>
std::complex<Real> marked_phase_factor(double theta) {
  return {static_cast<Real>(-std::cos(theta)), static_cast<Real>(-std::sin(theta))};
}

inline void require_family(const WalkSpec& spec, Family family, const char* what) {
  if (spec.family() != family) throw std::invalid_argument(std::string(what) + " applied to " + spec.describe());
}

inline void require_links(const WalkSpec& spec, const LinkSet& links) {
  if (!links.compatible_with(spec)) throw std::invalid_argument("link set does not belong to " + spec.describe());
}

}  // namespace detail

/// Grover coin C = 2|s⟩⟨s| − I at every vertex: c ↦ 2·mean(c)·𝟙 − c.
template <typename Real>
void apply_grover_coin(BasicWalkerState<Real>& state) {
  using Vector = typename BasicWalkerState<Real>::Vector;
  auto blocks = state.coin_blocks();
  const Vector twice_mean = blocks.rowwise().sum() * (Real(2) / static_cast<Real>(blocks.cols()));
  blocks = (-blocks).colwise() + twice_mean;
}

/// Grover coin at unmarked vertices, e^{i(π+θ)} I at the marked vertex.
template <typename Real>
void apply_modified_coin(BasicWalkerState<Real>& state, double theta) {
  const Index marked = state.spec().marked();
  auto blocks = state.coin_blocks();
  const auto saved = blocks.row(marked).eval();
  apply_grover_coin(state);
  blocks.row(marked) = saved * detail::marked_phase_factor<Real>(theta);
}

/// Phase-noisy coin C̃(θ) = −I + (1 + e^{iθ})|s⟩⟨s| at unmarked vertices and
/// −I at the marked vertex. C̃(0) is the Grover coin; C̃(θ)|s⟩ = e^{iθ}|s⟩.
template <typename Real>
void apply_unmarked_phase_coin(BasicWalkerState<Real>& state, double theta) {
  using Scalar = typename BasicWalkerState<Real>::Scalar;
  using Vector = typename BasicWalkerState<Real>::Vector;
  const Index marked = state.spec().marked();
  auto blocks = state.coin_blocks();
  const auto saved = blocks.row(marked).eval();
  const Scalar weight = (Scalar(1) - detail::marked_phase_factor<Real>(theta)) / static_cast<Real>(blocks.cols());
  const Vector projected = blocks.rowwise().sum() * weight;
  blocks = (-blocks).colwise() + projected;
  blocks.row(marked) = -saved;
}

/// Hypercube shift ψ_{d;x} ↔ ψ_{d;x⊕e_d}, skipping broken edges.
template <typename Real>
void apply_shift_hypercube(BasicWalkerState<Real>& state, const LinkSet& links = {}) {
  const WalkSpec& spec = state.spec();
  detail::require_family(spec, Family::Hypercube, "hypercube shift");
  detail::require_links(spec, links);
  auto blocks = state.coin_blocks();
  const Index vertices = spec.vertex_count();
  for (int axis = 0; axis < spec.coin_dim(); ++axis) {
    auto column = blocks.col(axis);
    const Index bit = Index{1} << axis;
    for (Index base = 0; base < vertices; base += 2 * bit) {
      if (links.empty()) {
        column.segment(base, bit).swap(column.segment(base + bit, bit));
        continue;
      }
      for (Index x = base; x < base + bit; ++x)
        if (!links.broken_canonical(axis, x)) std::swap(column[x], column[x + bit]);
    }
  }
}

/// Flip-flop grid shift S|d,j⟩|n⟩ = |d, j⊕1⟩|n + (−1)^j e_d⟩ with periodic
/// boundaries: intact link {n, n+e_d} swaps ψ_{d,0;n} and ψ_{d,1;n+e_d}.
template <typename Real>
void apply_shift_grid(BasicWalkerState<Real>& state, const LinkSet& links = {}) {
  const WalkSpec& spec = state.spec();
  detail::require_family(spec, Family::Grid, "grid shift");
  detail::require_links(spec, links);
  auto blocks = state.coin_blocks();
  const Index side = spec.dimension();
  for (int axis = 0; axis < 2; ++axis) {
    auto forward = blocks.col(2 * axis);
    auto backward = blocks.col(2 * axis + 1);
    for (Index n1 = 0; n1 < side; ++n1) {
      for (Index n0 = 0; n0 < side; ++n0) {
        const Index site = n0 + side * n1;
        if (links.broken_canonical(axis, site)) continue;
        const Index neighbour = axis == 0 ? (n0 + 1) % side + side * n1 : n0 + side * ((n1 + 1) % side);
        std::swap(forward[site], backward[neighbour]);
      }
    }
  }
}

template <typename Real>
void apply_shift(BasicWalkerState<Real>& state, const LinkSet& links = {}) {
  if (state.spec().family() == Family::Hypercube)
    apply_shift_hypercube(state, links);
  else
    apply_shift_grid(state, links);
}

/// One search iteration U′ = S·C′ under the given noise model and realization.
template <typename Real>
void step(BasicWalkerState<Real>& state, NoiseKind kind, const StepNoise& noise) {
  if (acts_on_unmarked_coin(kind))
    apply_unmarked_phase_coin(state, noise.phase);
  else
    apply_modified_coin(state, noise.phase);
  apply_shift(state, noise.links);
}

/// Unmarked, noiseless walk step U = S·(C ⊗ I).
template <typename Real>
void unmarked_step(BasicWalkerState<Real>& state) {
  apply_grover_coin(state);
  apply_shift(state);
}

}  // namespace qwsearch
