// Floating-point chain complexes.
//
// A complex on shape (a_0, ..., a_n) is stored as maps D_1, ..., D_n with
// D_i : A_i -> A_{i-1} an a_{i-1} x a_i matrix (rows index the codomain), so
// the chain condition reads D_i * D_{i+1} = 0.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaincx/complex_core.hpp"
#include "chaincx/errors.hpp"

namespace chaincx {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
struct ToleranceConfig {
  /// Pivots at or below factor * eps * max(rows, cols) * |largest pivot| count as zero.
  Scalar rank_tolerance_factor = Scalar(1000);
  /// Relative bound on max|D_i D_{i+1}|, see composition_defect().
  Scalar composition_tolerance = Scalar(1e-8);
  /// orbit_dimension refuses when the source or target dimension exceeds this.
  Index orbit_size_cap = 4096;

  void validate() const {
    if (!(rank_tolerance_factor > 0) || !(composition_tolerance > 0)) {
      throw ContractViolation("tolerances must be positive");
    }
  }
};

template <typename Scalar = double>
struct NumericalComplex {
  ComplexShape shape{0};
  /// maps[i - 1] holds D_i.
  std::vector<DenseMatrix<Scalar>> maps;
  Scalar composition_tolerance = Scalar(1e-8);

  const DenseMatrix<Scalar>& map(std::size_t i) const { return maps.at(i - 1); }
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 || m.allFinite();
}

/// Number of column-pivoted QR pivots above the relative threshold.
template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& matrix,
                     const ToleranceConfig<typename Derived::Scalar>& config = {}) {
  using Scalar = typename Derived::Scalar;
  config.validate();
  if (!all_finite(matrix)) throw DomainError("matrix has non-finite entries");
  if (matrix.rows() == 0 || matrix.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<DenseMatrix<Scalar>> qr(matrix);
  const auto size = static_cast<Scalar>(std::max(matrix.rows(), matrix.cols()));
  qr.setThreshold(config.rank_tolerance_factor * std::numeric_limits<Scalar>::epsilon() * size);
  return static_cast<Index>(qr.rank());
}

/// Orthonormal basis (as columns) of the null space of `matrix`.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> kernel_basis(
    const Eigen::MatrixBase<Derived>& matrix,
    const ToleranceConfig<typename Derived::Scalar>& config = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index cols = matrix.cols();
  if (matrix.rows() == 0) return DenseMatrix<Scalar>::Identity(cols, cols);
  if (cols == 0) return DenseMatrix<Scalar>(0, 0);
  if (!all_finite(matrix)) throw DomainError("matrix has non-finite entries");
  // Q from a pivoted QR of the transpose: its leading `rank` columns span the
  // row space, the remaining ones its orthogonal complement.
  Eigen::ColPivHouseholderQR<DenseMatrix<Scalar>> qr(matrix.transpose());
  qr.setThreshold(config.rank_tolerance_factor * std::numeric_limits<Scalar>::epsilon() *
                  static_cast<Scalar>(std::max(matrix.rows(), cols)));
  const Eigen::Index rank = qr.rank();
  DenseMatrix<Scalar> q = qr.householderQ() * DenseMatrix<Scalar>::Identity(cols, cols);
  return q.rightCols(cols - rank);
}

/// max_i max|D_i D_{i+1}| / (max|D_i| * max|D_{i+1}| * a_i); zero when every
/// product vanishes.
template <typename Scalar>
Scalar composition_defect(const NumericalComplex<Scalar>& complex) {
  Scalar worst = 0;
  for (std::size_t i = 1; i < complex.shape.length(); ++i) {
    const auto& left = complex.map(i);
    const auto& right = complex.map(i + 1);
    if (left.size() == 0 || right.size() == 0) continue;
    const Scalar product = (left * right).cwiseAbs().maxCoeff();
    if (product == 0) continue;
    const Scalar scale = left.cwiseAbs().maxCoeff() * right.cwiseAbs().maxCoeff() *
                         static_cast<Scalar>(complex.shape[i]);
    worst = std::max(worst, product / scale);
  }
  return worst;
}

/// Checks dimensions, finiteness and the chain condition; throws on failure.
template <typename Scalar>
void validate_complex(const NumericalComplex<Scalar>& complex) {
  const ComplexShape& shape = complex.shape;
  if (complex.maps.size() != shape.length()) {
    throw ContractViolation("complex has " + std::to_string(complex.maps.size()) +
                            " maps for shape " + to_string(shape));
  }
  if (!(complex.composition_tolerance > 0)) {
    throw ContractViolation("composition tolerance must be positive");
  }
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    const auto& d = complex.map(i);
    if (d.rows() != shape[i - 1] || d.cols() != shape[i]) {
      throw ContractViolation("map " + std::to_string(i) + " must be " +
                              std::to_string(shape[i - 1]) + "x" + std::to_string(shape[i]));
    }
    if (!all_finite(d)) throw DomainError("map " + std::to_string(i) + " has non-finite entries");
  }
  if (composition_defect(complex) > complex.composition_tolerance) {
    throw DomainError("maps do not compose to zero within tolerance");
  }
}

/// D_i sends the last r_i basis vectors of A_i to the first r_i basis vectors
/// of A_{i-1}. Feasibility puts im D_{i+1} inside the first a_i - r_i
/// coordinates, which D_i kills, so the chain condition holds exactly.
template <typename Scalar = double>
NumericalComplex<Scalar> canonical_complex(const ComplexShape& shape, const RankVector& ranks) {
  if (!is_feasible(shape, ranks)) {
    throw DomainError("rank vector " + to_string(ranks) + " is infeasible for shape " +
                      to_string(shape));
  }
  NumericalComplex<Scalar> complex;
  complex.shape = shape;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    DenseMatrix<Scalar> d = DenseMatrix<Scalar>::Zero(shape[i - 1], shape[i]);
    const Index r = ranks.rank(i);
    for (Index k = 0; k < r; ++k) d(k, shape[i] - r + k) = Scalar(1);
    complex.maps.push_back(std::move(d));
  }
  return complex;
}

template <typename Scalar>
RankVector numerical_ranks(const NumericalComplex<Scalar>& complex,
                           const ToleranceConfig<Scalar>& config = {}) {
  std::vector<Index> ranks;
  ranks.reserve(complex.maps.size());
  for (const auto& d : complex.maps) ranks.push_back(numerical_rank(d, config));
  return RankVector(std::move(ranks));
}

/// Betti numbers from numerical ranks. Throws RankInconsistency when those
/// ranks are infeasible, which means the tolerances do not fit the data.
template <typename Scalar>
BettiVector numerical_betti(const NumericalComplex<Scalar>& complex,
                            const ToleranceConfig<Scalar>& config = {}) {
  const RankVector ranks = numerical_ranks(complex, config);
  if (!is_feasible(complex.shape, ranks)) {
    throw RankInconsistency("numerical ranks " + to_string(ranks) + " are infeasible for " +
                            to_string(complex.shape) + "; adjust tolerances");
  }
  return betti_from_ranks(complex.shape, ranks);
}

/// Matrix of the linearized change-of-basis action
///   (X_0, ..., X_n) -> (X_{i-1} D_i - D_i X_i)_{i=1..n},
/// from the sum a_i^2 entries of the X_j (row-major, concatenated) to the
/// N = sum a_{i-1} a_i entries of the maps (row-major, concatenated).
template <typename Scalar>
DenseMatrix<Scalar> orbit_action_matrix(const NumericalComplex<Scalar>& complex) {
  const ComplexShape& shape = complex.shape;
  std::vector<Index> source_offset(shape.size() + 1, 0);
  for (std::size_t j = 0; j < shape.size(); ++j) {
    source_offset[j + 1] = source_offset[j] + shape[j] * shape[j];
  }
  DenseMatrix<Scalar> action =
      DenseMatrix<Scalar>::Zero(ambient_dimension(shape), source_offset.back());
  Index row_offset = 0;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    const auto& d = complex.map(i);
    const Index rows = shape[i - 1], cols = shape[i];
    for (Index s = 0; s < rows; ++s) {
      for (Index t = 0; t < cols; ++t) {
        const Index row = row_offset + s * cols + t;
        for (Index p = 0; p < rows; ++p) {
          action(row, source_offset[i - 1] + s * rows + p) += d(p, t);
        }
        for (Index q = 0; q < cols; ++q) {
          action(row, source_offset[i] + q * cols + t) -= d(s, q);
        }
      }
    }
    row_offset += rows * cols;
  }
  return action;
}

/// Dimension of the change-of-basis orbit through the complex, i.e. the
/// dimension of its rank stratum.
template <typename Scalar>
Index orbit_dimension(const NumericalComplex<Scalar>& complex,
                      const ToleranceConfig<Scalar>& config = {}) {
  Index source = 0;
  for (Index a : complex.shape.dims()) source += a * a;
  const Index target = ambient_dimension(complex.shape);
  if (source > config.orbit_size_cap || target > config.orbit_size_cap) {
    throw WorkCapExceeded("orbit matrix would be " + std::to_string(target) + "x" +
                              std::to_string(source),
                          static_cast<std::uint64_t>(config.orbit_size_cap));
  }
  return numerical_rank(orbit_action_matrix(complex), config);
}

/// Gaussian stream for one matrix: mt19937_64 seeded through std::seed_seq
/// with the 32-bit halves of (seed, stream), then Box-Muller pairs.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream);
  double next();

  template <typename Scalar = double>
  DenseMatrix<Scalar> matrix(Eigen::Index rows, Eigen::Index cols) {
    DenseMatrix<Scalar> m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = static_cast<Scalar>(next());
    }
    return m;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Greedy kernel-restricted sampler: D_1 is i.i.d. standard Gaussian, and
/// D_{i+1} = K G with K an orthonormal basis of ker D_i and G Gaussian.
/// Map D_i draws from GaussianStream(seed, i). This does NOT sample the
/// conditional measure on the variety of complexes; its ranks are
/// greedy_rank_vector(shape) almost surely.
template <typename Scalar = double>
NumericalComplex<Scalar> sequential_sample(const ComplexShape& shape, std::uint64_t seed,
                                           const ToleranceConfig<Scalar>& config = {}) {
  NumericalComplex<Scalar> complex;
  complex.shape = shape;
  complex.composition_tolerance = config.composition_tolerance;
  for (std::size_t i = 1; i <= shape.length(); ++i) {
    GaussianStream stream(seed, i);
    if (i == 1) {
      complex.maps.push_back(stream.matrix<Scalar>(shape[0], shape[1]));
      continue;
    }
    const DenseMatrix<Scalar> kernel = kernel_basis(complex.map(i - 1), config);
    complex.maps.push_back(kernel * stream.matrix<Scalar>(kernel.cols(), shape[i]));
  }
  return complex;
}

/// r_1 = min(a_0, a_1), r_{i+1} = min(a_{i+1}, a_i - r_i).
RankVector greedy_rank_vector(const ComplexShape& shape);

/// Random invertible matrix U diag(s) V^T with Haar-like orthogonal factors
/// and singular values log-uniform in [1, max_condition]; returns it together
/// with its inverse.
struct ConditionedMatrix {
  DenseMatrix<double> matrix;
  DenseMatrix<double> inverse;
};
ConditionedMatrix random_conditioned_matrix(Eigen::Index size, double max_condition,
                                            GaussianStream& stream);

/// Change of basis D_i -> G_{i-1} D_i G_i^{-1}, one invertible G_j per space.
template <typename Scalar>
NumericalComplex<Scalar> conjugate(const NumericalComplex<Scalar>& complex,
                                   const std::vector<DenseMatrix<Scalar>>& bases,
                                   const std::vector<DenseMatrix<Scalar>>& inverses) {
  if (bases.size() != complex.shape.size() || inverses.size() != bases.size()) {
    throw ContractViolation("need one basis change per space");
  }
  NumericalComplex<Scalar> out = complex;
  for (std::size_t i = 1; i <= complex.shape.length(); ++i) {
    out.maps[i - 1] = bases[i - 1] * complex.map(i) * inverses[i];
  }
  return out;
}

}  // namespace chaincx
