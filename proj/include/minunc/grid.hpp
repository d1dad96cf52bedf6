#pragma once

// Uniform periodic position grids with spectral and finite-difference
// momentum operators.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "linalg.hpp"

namespace minunc {

enum class Derivative { Spectral, CentralDifference };

/// n points x_k = -halfExtent + k*step on [-halfExtent, halfExtent).
struct Grid1D {
  int points = 512;
  double halfExtent = 8.0;

  Grid1D() = default;
  Grid1D(int points_, double halfExtent_) : points(points_), halfExtent(halfExtent_) {
    if (points < 8) throw GridTooCoarse("grid needs at least 8 points");
    if (!(halfExtent > 0.0)) throw DomainError("grid extent must be positive");
  }

  double step() const { return 2.0 * halfExtent / points; }
  double x(int k) const { return -halfExtent + k * step(); }

  RealVector positions() const {
    RealVector xs(points);
    for (int k = 0; k < points; ++k) xs(k) = x(k);
    return xs;
  }

  /// Angular wavenumbers in FFT order, Nyquist mode zeroed.
  RealVector wavenumbers() const {
    RealVector ks(points);
    const double dk = 2.0 * std::numbers::pi / (points * step());
    for (int m = 0; m < points; ++m) {
      const int signedM = m < points / 2 ? m : m - points;
      ks(m) = dk * signedM;
    }
    if (points % 2 == 0) ks(points / 2) = 0.0;
    return ks;
  }
};

/// d f / dx on the grid.
inline ComplexVector derivative(const ComplexVector& f, const Grid1D& g,
                                Derivative method = Derivative::Spectral) {
  const int n = g.points;
  if (f.size() != n) throw DimensionMismatch("sample count differs from grid size");
  if (method == Derivative::CentralDifference) {
    ComplexVector d(n);
    const double h = g.step();
    for (int k = 0; k < n; ++k) {
      d(k) = (f((k + 1) % n) - f((k + n - 1) % n)) / (2.0 * h);
    }
    return d;
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> in(f.data(), f.data() + n);
  std::vector<Complex> spec;
  fft.fwd(spec, in);
  const RealVector ks = g.wavenumbers();
  for (int m = 0; m < n; ++m) spec[static_cast<std::size_t>(m)] *= kI * ks(m);
  std::vector<Complex> out;
  fft.inv(out, spec);
  return Eigen::Map<ComplexVector>(out.data(), n);
}

/// diag(x_k).
inline ComplexMatrix positionMatrix(const Grid1D& g) {
  return g.positions().cast<Complex>().asDiagonal();
}

/// Dense -i hbar d/dx, built column by column and symmetrized.
inline ComplexMatrix momentumMatrix(const Grid1D& g, double hbar = 1.0,
                                    Derivative method = Derivative::Spectral) {
  const int n = g.points;
  ComplexMatrix p(n, n);
  for (int k = 0; k < n; ++k) {
    ComplexVector e = ComplexVector::Zero(n);
    e(k) = 1.0;
    p.col(k) = -kI * hbar * derivative(e, g, method);
  }
  return 0.5 * (p + p.adjoint());
}

/// Samples psi(x_k) * sqrt(step), rescaled to unit 2-norm.
template <class F>
StateVector sampleWavefunction(F&& psi, const Grid1D& g) {
  ComplexVector v(g.points);
  const double w = std::sqrt(g.step());
  for (int k = 0; k < g.points; ++k) v(k) = Complex(psi(g.x(k))) * w;
  return StateVector(std::move(v));
}

/// Position and momentum moments of a normalized grid state.
struct PhaseSpaceMoments {
  double meanX = 0.0;
  double meanP = 0.0;
  double varX = 0.0;
  double varP = 0.0;
  /// <{X~, P~}> / 2
  double covariance = 0.0;

  double dX() const { return std::sqrt(varX); }
  double dP() const { return std::sqrt(varP); }
};

inline PhaseSpaceMoments gridMoments(const StateVector& psi, const Grid1D& g,
                                     double hbar = 1.0,
                                     Derivative method = Derivative::Spectral) {
  if (psi.dim() != g.points) throw DimensionMismatch("state size differs from grid size");
  const ComplexVector& v = psi.amplitudes();
  const RealVector xs = g.positions();
  const ComplexVector pv = -kI * hbar * derivative(v, g, method);
  PhaseSpaceMoments m;
  m.meanX = (v.cwiseAbs2().array() * xs.array()).sum();
  m.meanP = v.dot(pv).real();
  const ComplexVector xt = (xs.array() - m.meanX).matrix().cast<Complex>().asDiagonal() * v;
  const ComplexVector pt = pv - m.meanP * v;
  m.varX = xt.squaredNorm();
  m.varP = pt.squaredNorm();
  m.covariance = xt.dot(pt).real();
  return m;
}

} // namespace minunc
