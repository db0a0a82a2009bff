/*
 * state_space.hpp: walker Hilbert space (coin ⊗ vertex)
 *
 * A walk lives either on the n-dimensional hypercube (coin = one direction
 * per bit, vertex = n-bit label) or on a periodic side×side grid (coin =
 * (axis d, orientation j) packed as 2d + j, vertex = n0 + side·n1).
 *
 * Amplitudes are stored coin-major:
 *
 *     index = coin · vertex_count + vertex
 *
 * so each coin component is a contiguous column of length vertex_count, and
 * the whole state can be viewed as a vertex_count × coin_dim column-major
 * matrix whose rows are the per-vertex coin vectors.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace qwsearch {

using Index = Eigen::Index;

enum class Family { Hypercube, Grid };

const char* to_string(Family family);

/// Graph family, size and marked vertex of a search walk.
class WalkSpec {
public:
  /// n-dimensional hypercube, 2 ≤ n ≤ 26.
  static WalkSpec hypercube(int n, Index marked = 0);
  /// Periodic side × side grid, side ≥ 2.
  static WalkSpec grid(int side, Index marked = 0);

  Family family() const noexcept { return family_; }
  /// n for the hypercube, side for the grid.
  int dimension() const noexcept { return dimension_; }
  int coin_dim() const noexcept { return family_ == Family::Hypercube ? dimension_ : 4; }
  /// Number of lattice axes a link can lie along (n or 2).
  int axis_count() const noexcept { return family_ == Family::Hypercube ? dimension_ : 2; }
  Index vertex_count() const noexcept { return vertex_count_; }
  Index size() const noexcept { return vertex_count_ * coin_dim(); }
  Index marked() const noexcept { return marked_; }

  WalkSpec with_marked(Index marked) const;

  Index grid_vertex(int n0, int n1) const;
  std::pair<int, int> grid_coords(Index vertex) const;

  /// "hypercube n=8 marked=0" style label.
  std::string describe() const;

  friend bool operator==(const WalkSpec&, const WalkSpec&) = default;

private:
  WalkSpec(Family family, int dimension, Index vertex_count, Index marked);

  Family family_;
  int dimension_;
  Index vertex_count_;
  Index marked_;
};

/// Thrown when a state has drifted off the unit sphere.
class NormError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Walker state over a WalkSpec, templated on the real type of its amplitudes.
template <typename Real>
class BasicWalkerState {
public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using BlockMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  BasicWalkerState(const WalkSpec& spec, Vector amplitudes)
      : spec_(spec), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != spec_.size())
      throw std::invalid_argument("amplitude vector length " + std::to_string(amplitudes_.size()) +
                                  " does not match " + spec_.describe());
  }

  const WalkSpec& spec() const noexcept { return spec_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Vector& amplitudes() noexcept { return amplitudes_; }

  /// vertex_count × coin_dim view; row v is the coin vector at vertex v.
  Eigen::Map<BlockMatrix> coin_blocks() {
    return {amplitudes_.data(), spec_.vertex_count(), spec_.coin_dim()};
  }
  Eigen::Map<const BlockMatrix> coin_blocks() const {
    return {amplitudes_.data(), spec_.vertex_count(), spec_.coin_dim()};
  }

  Index index(int coin, Index vertex) const noexcept { return coin * spec_.vertex_count() + vertex; }
  std::pair<int, Index> coin_vertex(Index index) const noexcept {
    return {static_cast<int>(index / spec_.vertex_count()), index % spec_.vertex_count()};
  }

  Scalar& operator()(int coin, Index vertex) { return amplitudes_[index(coin, vertex)]; }
  const Scalar& operator()(int coin, Index vertex) const { return amplitudes_[index(coin, vertex)]; }

private:
  WalkSpec spec_;
  Vector amplitudes_;
};

using WalkerState = BasicWalkerState<double>;

/// |s^C⟩ ⊗ |s^P⟩: every amplitude 1/√(coin_dim · vertex_count).
template <typename Real = double>
BasicWalkerState<Real> make_uniform_state(const WalkSpec& spec) {
  using State = BasicWalkerState<Real>;
  const Real amplitude = Real(1) / std::sqrt(static_cast<Real>(spec.size()));
  return State(spec, State::Vector::Constant(spec.size(), typename State::Scalar(amplitude, 0)));
}

/// |coin⟩ ⊗ |vertex⟩.
template <typename Real = double>
BasicWalkerState<Real> make_basis_state(const WalkSpec& spec, int coin, Index vertex) {
  using State = BasicWalkerState<Real>;
  if (coin < 0 || coin >= spec.coin_dim() || vertex < 0 || vertex >= spec.vertex_count())
    throw std::out_of_range("basis state outside " + spec.describe());
  typename State::Vector amplitudes = State::Vector::Zero(spec.size());
  amplitudes[coin * spec.vertex_count() + vertex] = 1;
  return State(spec, std::move(amplitudes));
}

/// |Σ|ψ|² − 1|.
template <typename Real>
Real norm_error(const BasicWalkerState<Real>& state) {
  return std::abs(state.amplitudes().squaredNorm() - Real(1));
}

/// Per-vertex probabilities, coin index summed out. No normalization check.
template <typename Real>
typename BasicWalkerState<Real>::RealVector vertex_probabilities(const BasicWalkerState<Real>& state) {
  return state.coin_blocks().rowwise().squaredNorm();
}

/// Per-vertex probabilities of a unit-norm state; throws NormError when the
/// norm has drifted by more than 1e−6.
template <typename Real>
typename BasicWalkerState<Real>::RealVector position_distribution(const BasicWalkerState<Real>& state) {
  const Real drift = norm_error(state);
  if (!(drift <= Real(1e-6)))
    throw NormError("state norm deviates from 1 by " + std::to_string(static_cast<double>(drift)));
  return vertex_probabilities(state);
}

template <typename Real>
Real marked_probability(const BasicWalkerState<Real>& state, Index vertex) {
  if (vertex < 0 || vertex >= state.spec().vertex_count())
    throw std::out_of_range("vertex " + std::to_string(vertex) + " outside " + state.spec().describe());
  return state.coin_blocks().row(vertex).squaredNorm();
}

template <typename Real>
Real marked_probability(const BasicWalkerState<Real>& state) {
  return marked_probability(state, state.spec().marked());
}

}  // namespace qwsearch
