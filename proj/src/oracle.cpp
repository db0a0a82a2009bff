#include "qwsearch/oracle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qwsearch {

namespace {

using Complex = std::complex<double>;

void require_small(const WalkSpec& spec) {
  if (spec.size() > kMaxDenseDimension)
    throw InstanceTooLarge(spec.describe() + " has dimension " + std::to_string(spec.size()) + ", above the dense limit " +
                           std::to_string(kMaxDenseDimension));
}

template <typename Apply>
DenseMatrix columns_from_kernel(const WalkSpec& spec, Apply&& apply) {
  require_small(spec);
  const Index D = spec.size();
  DenseMatrix out(D, D);
  for (Index i = 0; i < D; ++i) {
    WalkerState basis(spec, WalkerState::Vector::Unit(D, i));
    apply(basis);
    out.col(i) = basis.amplitudes();
  }
  return out;
}

DenseMatrix marked_projector(const WalkSpec& spec) {
  DenseMatrix P = DenseMatrix::Zero(spec.vertex_count(), spec.vertex_count());
  P(spec.marked(), spec.marked()) = 1.0;
  return P;
}

}  // namespace

DenseMatrix build_dense_step(const WalkSpec& spec, NoiseKind kind, const StepNoise& noise) {
  return columns_from_kernel(spec, [&](WalkerState& state) { step(state, kind, noise); });
}

DenseMatrix build_dense_unmarked_step(const WalkSpec& spec) {
  return columns_from_kernel(spec, [](WalkerState& state) { unmarked_step(state); });
}

DenseMatrix dense_grover_coin(int coin_dim) {
  return DenseMatrix::Constant(coin_dim, coin_dim, 2.0 / coin_dim) - DenseMatrix::Identity(coin_dim, coin_dim);
}

DenseMatrix dense_coin_stage(const WalkSpec& spec, NoiseKind kind, double phase) {
  require_small(spec);
  const int d = spec.coin_dim();
  const Index V = spec.vertex_count();
  const DenseMatrix P = marked_projector(spec);
  const DenseMatrix rest = DenseMatrix::Identity(V, V) - P;
  const DenseMatrix Id = DenseMatrix::Identity(d, d);
  const Complex e_theta = std::polar(1.0, phase);

  if (acts_on_unmarked_coin(kind)) {
    const DenseMatrix s_projector = DenseMatrix::Constant(d, d, 1.0 / d);
    const DenseMatrix noisy = -Id + (1.0 + e_theta) * s_projector;
    return Eigen::kroneckerProduct(noisy, rest).eval() - Eigen::kroneckerProduct(Id, P).eval();
  }
  return Eigen::kroneckerProduct(dense_grover_coin(d), rest).eval() + Eigen::kroneckerProduct((-e_theta) * Id, P).eval();
}

DenseMatrix dense_marked_coin_textbook(const WalkSpec& spec) {
  require_small(spec);
  const int d = spec.coin_dim();
  const Index V = spec.vertex_count();
  const DenseMatrix C = dense_grover_coin(d);
  return Eigen::kroneckerProduct(C, DenseMatrix::Identity(V, V)).eval() -
         Eigen::kroneckerProduct(DenseMatrix::Identity(d, d) + C, marked_projector(spec)).eval();
}

DenseMatrix dense_shift(const WalkSpec& spec, const LinkSet& links) {
  require_small(spec);
  if (!links.compatible_with(spec)) throw std::invalid_argument("link set does not belong to " + spec.describe());
  const Index V = spec.vertex_count();
  const Index D = spec.size();
  DenseMatrix S = DenseMatrix::Zero(D, D);

  if (spec.family() == Family::Hypercube) {
    for (int d = 0; d < spec.coin_dim(); ++d) {
      for (Index x = 0; x < V; ++x) {
        const Index target = x ^ (Index{1} << d);
        const Index to = links.contains(d, x) ? x : target;
        S(d * V + to, d * V + x) = 1.0;
      }
    }
    return S;
  }

  // |d, j⟩|n⟩ → |d, j⊕1⟩|n + (−1)^j e_d⟩; the edge crossed is the forward
  // link of n (j = 0) or of n − e_d (j = 1).
  const int side = spec.dimension();
  for (int d = 0; d < 2; ++d) {
    for (int j = 0; j < 2; ++j) {
      for (Index v = 0; v < V; ++v) {
        auto [n0, n1] = spec.grid_coords(v);
        const int step = j == 0 ? 1 : side - 1;
        int m0 = n0, m1 = n1;
        (d == 0 ? m0 : m1) = ((d == 0 ? n0 : n1) + step) % side;
        const Index moved = spec.grid_vertex(m0, m1);
        const Index link_source = j == 0 ? v : moved;
        const int from = 2 * d + j;
        if (links.contains(d, link_source))
          S(from * V + v, from * V + v) = 1.0;
        else
          S((2 * d + (j ^ 1)) * V + moved, from * V + v) = 1.0;
      }
    }
  }
  return S;
}

DenseMatrix build_algebraic_step(const WalkSpec& spec, NoiseKind kind, const StepNoise& noise) {
  return dense_shift(spec, noise.links) * dense_coin_stage(spec, kind, noise.phase);
}

double unitarity_defect(const DenseMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) return std::numeric_limits<double>::infinity();
  return (matrix.adjoint() * matrix - DenseMatrix::Identity(matrix.rows(), matrix.cols())).cwiseAbs().maxCoeff();
}

double compare_structured_vs_dense(const WalkSpec& spec, int steps, const NoiseSpec& noise, std::uint64_t seed) {
  require_small(spec);
  noise.validate();
  std::mt19937_64 engine(derive_seed(seed, 0));
  std::normal_distribution<double> normal;
  Eigen::VectorXcd psi(spec.size());
  for (Index i = 0; i < psi.size(); ++i) psi[i] = Complex(normal(engine), normal(engine));
  psi.normalize();

  WalkerState structured(spec, psi);
  Eigen::VectorXcd dense = psi;
  RngStream stream(derive_seed(seed, 1));
  StepNoise realization;
  double deviation = 0.0;
  for (int s = 0; s < steps; ++s) {
    realize_step_noise(noise, spec, stream, realization);
    step(structured, noise.kind, realization);
    dense = build_algebraic_step(spec, noise.kind, realization) * dense;
    deviation = std::max(deviation, (structured.amplitudes() - dense).cwiseAbs().maxCoeff());
  }
  return deviation;
}

Eigenphase smallest_eigenphase(const DenseMatrix& unitary) {
  const double defect = unitarity_defect(unitary);
  if (!(defect <= 1e-8)) throw NotUnitary("matrix is not unitary (defect " + std::to_string(defect) + ")");
  Eigen::ComplexEigenSolver<DenseMatrix> solver(unitary, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  double alpha = std::numeric_limits<double>::infinity();
  for (const Complex& lambda : solver.eigenvalues()) {
    const double angle = std::abs(std::arg(lambda));
    if (angle > 1e-9) alpha = std::min(alpha, angle);
  }
  if (!std::isfinite(alpha)) throw std::domain_error("matrix has no nonzero eigenphase");
  return {alpha, static_cast<int>(std::ceil(std::numbers::pi / (2.0 * alpha)))};
}

UnitEigenspace unit_eigenspace(const DenseMatrix& unitary, double tolerance) {
  Eigen::ComplexEigenSolver<DenseMatrix> solver(unitary, true);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  DenseMatrix vectors(unitary.rows(), 0);
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()[i] - 1.0) <= tolerance) {
      vectors.conservativeResize(Eigen::NoChange, vectors.cols() + 1);
      vectors.col(vectors.cols() - 1) = solver.eigenvectors().col(i);
    }
  }
  UnitEigenspace out;
  if (vectors.cols() == 0) {
    out.basis = vectors;
    return out;
  }
  out.multiplicity = static_cast<int>(vectors.cols());
  Eigen::HouseholderQR<DenseMatrix> qr(vectors);
  out.basis = DenseMatrix(qr.householderQ()).leftCols(out.multiplicity);
  return out;
}

}  // namespace qwsearch
