#pragma once

// Random states, density matrices and observables for property tests.

#include <cstdint>
#include <random>

#include "linalg.hpp"

namespace minunc {

using Rng = std::mt19937_64;

/// Matrix with iid standard complex normal entries.
inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
inline ComplexMatrix randomUnitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

/// (G + G^dagger) / 2 for Ginibre G.
inline ComplexMatrix randomHermitian(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

inline StateVector randomState(Eigen::Index dim, Rng& rng) {
  return StateVector(ginibre(dim, 1, rng).col(0));
}

/// Schmidt coefficients with every entry >= floor: c_k^2 = floor^2 + (1 - d floor^2) w_k
/// for w uniform on the probability simplex.
inline RealVector randomSchmidtCoefficients(Eigen::Index count, double floor, Rng& rng) {
  const double d = static_cast<double>(count);
  if (floor < 0.0 || floor * floor * d > 1.0) {
    throw DomainError("Schmidt floor too large for the given rank");
  }
  std::exponential_distribution<double> e(1.0);
  RealVector w(count);
  for (Eigen::Index k = 0; k < count; ++k) w(k) = e(rng);
  w /= w.sum();
  RealVector c(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    c(k) = std::sqrt(floor * floor + (1.0 - d * floor * floor) * w(k));
  }
  return c / c.norm();
}

/// Full-rank state U_A diag(c) U_B^T with min(c) >= floor.
inline BipartiteState randomEntangledState(Eigen::Index dimA, Eigen::Index dimB, double floor,
                                           Rng& rng) {
  const Eigen::Index r = std::min(dimA, dimB);
  const RealVector c = randomSchmidtCoefficients(r, floor, rng);
  const ComplexMatrix ua = randomUnitary(dimA, rng);
  const ComplexMatrix ub = randomUnitary(dimB, rng);
  const ComplexMatrix m = ua.leftCols(r) * c.cast<Complex>().asDiagonal() *
                          ub.leftCols(r).transpose();
  return BipartiteState::fromMatrix(m);
}

/// Generic pure bipartite state from Ginibre amplitudes.
inline BipartiteState randomBipartiteState(Eigen::Index dimA, Eigen::Index dimB, Rng& rng) {
  return BipartiteState::fromMatrix(ginibre(dimA, dimB, rng));
}

/// G G^dagger / tr for Ginibre G of shape dim x rank.
inline DensityMatrix randomDensityMatrix(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

} // namespace minunc
