/*
 * oracle.hpp: dense reference operators for small instances
 *
 * Two independent dense routes to the one-step operator:
 *
 *   build_dense_step      column i is the matrix-free step applied to basis state i
 *   build_algebraic_step  S · C′ assembled from Kronecker products and the
 *                         shift's defining basis map, never touching the kernels
 *
 * compare_structured_vs_dense evolves with the kernels against the algebraic
 * route, so the two sides share nothing but the noise realization.
 */
#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qwsearch/noise.hpp"
#include "qwsearch/operators.hpp"
#include "qwsearch/state_space.hpp"

namespace qwsearch {

using DenseMatrix = Eigen::MatrixXcd;

/// Largest state dimension the dense builders accept.
inline constexpr Index kMaxDenseDimension = 4096;

class InstanceTooLarge : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotUnitary : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

DenseMatrix build_dense_step(const WalkSpec& spec, NoiseKind kind, const StepNoise& noise);

/// Unmarked noiseless U = S·(C ⊗ I), column by column from the kernels.
DenseMatrix build_dense_unmarked_step(const WalkSpec& spec);

/// d × d Grover coin 2|s⟩⟨s| − I.
DenseMatrix dense_grover_coin(int coin_dim);

/// Coin stage as a D × D matrix: C ⊗ (I − P) + M ⊗ P with P = |v0⟩⟨v0| and
/// M the marked block (e^{i(π+θ)} I, or −I on the unmarked-phase path, whose
/// unmarked block is −I + (1 + e^{iθ})|s⟩⟨s|).
DenseMatrix dense_coin_stage(const WalkSpec& spec, NoiseKind kind, double phase);

/// Textbook SKW/AKR marking C′ = C ⊗ I − (I + C) ⊗ |v0⟩⟨v0|.
DenseMatrix dense_marked_coin_textbook(const WalkSpec& spec);

/// Shift from its basis map, identity on pairs across broken links.
DenseMatrix dense_shift(const WalkSpec& spec, const LinkSet& links);

DenseMatrix build_algebraic_step(const WalkSpec& spec, NoiseKind kind, const StepNoise& noise);

/// max |(M†M − I)_ij|.
double unitarity_defect(const DenseMatrix& matrix);

/// Evolves one random unit state (drawn from `seed`) for `steps` steps both
/// matrix-free and with build_algebraic_step under identical noise
/// realizations; returns the largest entrywise deviation seen.
double compare_structured_vs_dense(const WalkSpec& spec, int steps, const NoiseSpec& noise, std::uint64_t seed);

struct Eigenphase {
  double alpha = 0.0;     ///< smallest |arg λ| above 1e−9
  int stopping_time = 0;  ///< ⌈π / (2α)⌉
};

/// Throws NotUnitary when ‖U†U − I‖_max > 1e−8 and std::domain_error when
/// every eigenphase is numerically zero.
Eigenphase smallest_eigenphase(const DenseMatrix& unitary);

/// Eigenvalues λ with |λ − 1| ≤ tolerance, and an orthonormal basis of that eigenspace.
struct UnitEigenspace {
  int multiplicity = 0;
  DenseMatrix basis;
};

UnitEigenspace unit_eigenspace(const DenseMatrix& unitary, double tolerance = 1e-8);

}  // namespace qwsearch
