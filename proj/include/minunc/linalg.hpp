#pragma once

// Dense complex linear algebra for small quantum systems: state and operator
// types, Kronecker products, partial trace and the Schmidt decomposition.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace minunc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Elementwise tolerance for Hermiticity checks, relative to max(1, max|M_ij|).
inline constexpr double kHermitianTol = 1e-12;
/// Largest imaginary part of an expectation value that is treated as rounding.
inline constexpr double kImagResidualTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kNegativeEigenvalueTol = 1e-10;

inline double maxAbs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermitianDefect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return maxAbs(m - m.adjoint());
}

inline bool isHermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() &&
         hermitianDefect(m) <= tol * std::max(1.0, maxAbs(m));
}

inline void requireHermitian(const ComplexMatrix& m, const char* what) {
  if (!isHermitian(m)) {
    throw NonHermitian(std::string(what) + " is not Hermitian (defect " +
                       std::to_string(hermitianDefect(m)) + ")");
  }
}

inline void requireSquare(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + " must be square, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
}

/// A normalized pure state. The constructor rescales its input to unit norm.
class StateVector {
public:
  explicit StateVector(ComplexVector amplitudes)
      : amplitudes_(std::move(amplitudes)) {
    const double norm = amplitudes_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DomainError("state vector has zero or non-finite norm");
    }
    amplitudes_ /= norm;
  }

  /// Computational basis vector |k> in dimension dim.
  static StateVector basis(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim) throw DimensionMismatch("basis index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return StateVector(std::move(v));
  }

  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index k) const { return amplitudes_(k); }

private:
  ComplexVector amplitudes_;
};

/// Pure state on H_A (x) H_B. Amplitude d_ij sits at flat index i*dimB + j.
class BipartiteState {
public:
  BipartiteState(Eigen::Index dimA, Eigen::Index dimB, ComplexVector amplitudes)
      : dimA_(dimA), dimB_(dimB), amplitudes_(std::move(amplitudes)) {
    if (dimA < 1 || dimB < 1 || amplitudes_.size() != dimA * dimB) {
      throw DimensionMismatch("bipartite amplitudes: expected " +
                              std::to_string(dimA * dimB) + " entries, got " +
                              std::to_string(amplitudes_.size()));
    }
    const double norm = amplitudes_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DomainError("bipartite state has zero or non-finite norm");
    }
    amplitudes_ /= norm;
  }

  /// Build from a dimA x dimB coefficient matrix d_ij.
  static BipartiteState fromMatrix(const ComplexMatrix& d) {
    ComplexVector flat(d.size());
    for (Eigen::Index i = 0; i < d.rows(); ++i)
      for (Eigen::Index j = 0; j < d.cols(); ++j) flat(i * d.cols() + j) = d(i, j);
    return BipartiteState(d.rows(), d.cols(), std::move(flat));
  }

  static BipartiteState product(const StateVector& a, const StateVector& b) {
    ComplexMatrix d = a.amplitudes() * b.amplitudes().transpose();
    return fromMatrix(d);
  }

  Eigen::Index dimA() const { return dimA_; }
  Eigen::Index dimB() const { return dimB_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

  /// The dimA x dimB matrix of coefficients d_ij.
  ComplexMatrix matrix() const {
    ComplexMatrix d(dimA_, dimB_);
    for (Eigen::Index i = 0; i < dimA_; ++i)
      for (Eigen::Index j = 0; j < dimB_; ++j) d(i, j) = amplitudes_(i * dimB_ + j);
    return d;
  }

  StateVector asStateVector() const { return StateVector(amplitudes_); }

private:
  Eigen::Index dimA_;
  Eigen::Index dimB_;
  ComplexVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace operator. Validated on construction.
class DensityMatrix {
public:
  explicit DensityMatrix(const ComplexMatrix& m) {
    requireSquare(m, "density matrix");
    if (m.rows() == 0) throw DimensionMismatch("density matrix is empty");
    if (!m.allFinite()) throw DomainError("density matrix has non-finite entries");
    if (hermitianDefect(m) > kHermitianTol) {
      throw NonHermitian("density matrix is not Hermitian (defect " +
                         std::to_string(hermitianDefect(m)) + ")");
    }
    matrix_ = 0.5 * (m + m.adjoint());
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
      throw DomainError("density matrix trace " + std::to_string(tr.real()) +
                        " differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(matrix_);
    if (eig.info() != Eigen::Success) {
      throw EigenFailure("eigendecomposition of density matrix failed");
    }
    eigenvalues_ = eig.eigenvalues();
    eigenvectors_ = eig.eigenvectors();
    if (eigenvalues_.minCoeff() < -kNegativeEigenvalueTol) {
      throw DomainError("density matrix has negative eigenvalue " +
                        std::to_string(eigenvalues_.minCoeff()));
    }
  }

  static DensityMatrix pure(const StateVector& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  /// sum_k p_k |psi_k><psi_k| with p_k >= 0 summing to one.
  static DensityMatrix mixture(const std::vector<double>& weights,
                               const std::vector<StateVector>& states) {
    if (weights.size() != states.size() || states.empty()) {
      throw DimensionMismatch("mixture needs one weight per state");
    }
    const Eigen::Index dim = states.front().dim();
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (states[k].dim() != dim) throw DimensionMismatch("mixture states differ in dimension");
      if (weights[k] < 0.0) throw DomainError("mixture weight is negative");
      m += weights[k] * states[k].amplitudes() * states[k].amplitudes().adjoint();
    }
    return DensityMatrix(m);
  }

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// Ascending eigenvalues.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  /// Columns are the eigenvectors matching eigenvalues().
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

private:
  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

/// c_i >= 0 in descending order with local bases |a_i>, |b_i>.
/// All min(dimA, dimB) terms are kept; `rank` counts those above tolerance.
struct SchmidtDecomposition {
  RealVector coefficients;
  std::vector<StateVector> basisA;
  std::vector<StateVector> basisB;
  int rank = 0;
  double rankTolerance = 0.0;

  /// sum_i c_i |a_i>|b_i> flattened with the BipartiteState convention.
  ComplexVector reconstruct() const {
    const Eigen::Index dA = basisA.front().dim();
    const Eigen::Index dB = basisB.front().dim();
    ComplexMatrix d = ComplexMatrix::Zero(dA, dB);
    for (std::size_t k = 0; k < basisA.size(); ++k) {
      d += coefficients(static_cast<Eigen::Index>(k)) * basisA[k].amplitudes() *
           basisB[k].amplitudes().transpose();
    }
    ComplexVector flat(d.size());
    for (Eigen::Index i = 0; i < dA; ++i)
      for (Eigen::Index j = 0; j < dB; ++j) flat(i * dB + j) = d(i, j);
    return flat;
  }
};

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  requireSquare(x, "commutator operand");
  if (x.rows() != y.rows() || y.rows() != y.cols()) {
    throw DimensionMismatch("commutator operands differ in dimension");
  }
  return x * y - y * x;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  requireSquare(x, "anticommutator operand");
  if (x.rows() != y.rows() || y.rows() != y.cols()) {
    throw DimensionMismatch("anticommutator operands differ in dimension");
  }
  return x * y + y * x;
}

namespace detail {

inline void requireOperatorOn(const ComplexMatrix& o, Eigen::Index dim) {
  if (o.rows() != dim || o.cols() != dim) {
    throw DimensionMismatch("operator is " + std::to_string(o.rows()) + "x" +
                            std::to_string(o.cols()) + " but state has dimension " +
                            std::to_string(dim));
  }
}

inline double realPart(Complex value, double scale) {
  if (std::abs(value.imag()) > kImagResidualTol * std::max(1.0, scale)) {
    throw NonHermitian("expectation value has imaginary part " +
                       std::to_string(value.imag()));
  }
  return value.real();
}

} // namespace detail

/// <psi|O|psi> for Hermitian O.
inline double expectation(const ComplexMatrix& o, const StateVector& psi) {
  detail::requireOperatorOn(o, psi.dim());
  requireHermitian(o, "observable");
  return detail::realPart(psi.amplitudes().dot(o * psi.amplitudes()), maxAbs(o));
}

/// tr(rho O) for Hermitian O.
inline double expectation(const ComplexMatrix& o, const DensityMatrix& rho) {
  detail::requireOperatorOn(o, rho.dim());
  requireHermitian(o, "observable");
  return detail::realPart((rho.matrix() * o).trace(), maxAbs(o));
}

/// <O^2> - <O>^2, evaluated as ||(O - <O>)psi||^2 so it cannot go negative.
inline double variance(const ComplexMatrix& o, const StateVector& psi) {
  const double mean = expectation(o, psi);
  const ComplexVector centered = o * psi.amplitudes() - mean * psi.amplitudes();
  return centered.squaredNorm();
}

inline double variance(const ComplexMatrix& o, const DensityMatrix& rho) {
  const double mean = expectation(o, rho);
  const ComplexMatrix centered = o - mean * identity(o.rows());
  const double v = (rho.matrix() * centered * centered).trace().real();
  return std::max(v, 0.0);
}

/// Schmidt decomposition from the singular values of the d_ij matrix.
/// Without an explicit tolerance the rank cutoff is 1e-10 * (largest coefficient).
inline SchmidtDecomposition schmidt(const BipartiteState& state,
                                    std::optional<double> rankTolerance = std::nullopt) {
  if (rankTolerance && !(*rankTolerance > 0.0)) {
    throw DomainError("rank tolerance must be positive");
  }
  const ComplexMatrix d = state.matrix();
  ComplexMatrix u;
  ComplexMatrix v;
  RealVector s;
  // d = U S V^dagger, hence d_ij = sum_k U_ik s_k conj(V_jk).
  if (std::min(d.rows(), d.cols()) <= 64) {
    Eigen::JacobiSVD<ComplexMatrix> svd(d, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<ComplexMatrix> svd(d, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw FactorizationError("SVD did not converge");
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  }
  if (!s.allFinite() || !u.allFinite() || !v.allFinite()) {
    throw FactorizationError("SVD produced non-finite values");
  }

  SchmidtDecomposition out;
  out.coefficients = s;
  out.rankTolerance = rankTolerance.value_or(1e-10 * (s.size() > 0 ? s(0) : 0.0));
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    out.basisA.emplace_back(u.col(k));
    out.basisB.emplace_back(v.col(k).conjugate());
    if (s(k) > out.rankTolerance) ++out.rank;
  }
  return out;
}

/// rho^A_ik = sum_j d_ij conj(d_kj).
inline DensityMatrix partialTraceB(const BipartiteState& state) {
  const ComplexMatrix d = state.matrix();
  return DensityMatrix(d * d.adjoint());
}

/// tr rho^2, evaluated as the squared Frobenius norm.
inline double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

/// -tr rho ln rho from the spectrum, with eigenvalues clipped to [0, 1] and 0 ln 0 = 0.
inline double vonNeumannEntropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < rho.eigenvalues().size(); ++k) {
    const double p = std::clamp(rho.eigenvalues()(k), 0.0, 1.0);
    if (p > 0.0) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

} // namespace minunc
