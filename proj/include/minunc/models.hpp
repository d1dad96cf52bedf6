#pragma once

// Concrete systems: spin-j angular momentum, the truncated harmonic
// oscillator, Gaussian wave packets, the two-mode entangled Gaussian and the
// Gaussian solutions of the P,Q annihilation equation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "linalg.hpp"
#include "uncertainty.hpp"

namespace minunc {

// ---------------------------------------------------------------------------
// Spin j, hbar = 1. j and m are carried as twice their value.

/// Spin-j operators in the |j,m> basis ordered m = j, j-1, ..., -j.
class SpinSystem {
public:
  explicit SpinSystem(int twoJ) : twoJ_(twoJ) {
    if (twoJ < 1) throw DomainError("spin needs j >= 1/2");
    const int dim = twoJ + 1;
    const double j = 0.5 * twoJ;
    jz_ = ComplexMatrix::Zero(dim, dim);
    jplus_ = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      const double m = j - k;
      jz_(k, k) = m;
      // J+ |j,m> = sqrt((j-m)(j+m+1)) |j,m+1>, and |j,m+1> sits at index k-1.
      if (k > 0) jplus_(k - 1, k) = std::sqrt((j - m) * (j + m + 1.0));
    }
    jminus_ = jplus_.adjoint();
    jx_ = 0.5 * (jplus_ + jminus_);
    jy_ = (jplus_ - jminus_) / (2.0 * kI);
  }

  int twoJ() const { return twoJ_; }
  double j() const { return 0.5 * twoJ_; }
  Eigen::Index dim() const { return twoJ_ + 1; }

  const ComplexMatrix& Jx() const { return jx_; }
  const ComplexMatrix& Jy() const { return jy_; }
  const ComplexMatrix& Jz() const { return jz_; }
  const ComplexMatrix& Jplus() const { return jplus_; }
  const ComplexMatrix& Jminus() const { return jminus_; }

  Eigen::Index index(int twoM) const {
    if (std::abs(twoM) > twoJ_ || (twoJ_ - twoM) % 2 != 0) {
      throw InvalidM("m = " + std::to_string(twoM) + "/2 is not a projection of j = " +
                     std::to_string(twoJ_) + "/2");
    }
    return (twoJ_ - twoM) / 2;
  }

  /// |j, m> with m = twoM / 2.
  StateVector state(int twoM) const { return StateVector::basis(dim(), index(twoM)); }

private:
  int twoJ_;
  ComplexMatrix jx_, jy_, jz_, jplus_, jminus_;
};

struct SpinVariances {
  double varJx = 0.0;
  double varJy = 0.0;
  double matrixVarJx = 0.0;
  double matrixVarJy = 0.0;
};

/// (dJx)^2 = (dJy)^2 = (j(j+1) - m^2) / 2 in |j,m>, with the matrix values alongside.
inline SpinVariances spinVariances(const SpinSystem& sys, int twoM) {
  const StateVector s = sys.state(twoM);
  const double j = sys.j();
  const double m = 0.5 * twoM;
  SpinVariances v;
  v.varJx = v.varJy = 0.5 * (j * (j + 1.0) - m * m);
  v.matrixVarJx = variance(sys.Jx(), s);
  v.matrixVarJy = variance(sys.Jy(), s);
  return v;
}

/// Residuals of (Jx + Gamma Jy)|j,+-j> = 0 for the two extremal states.
struct SpinSaturationReport {
  double twoJ = 0;
  /// Decomposition check: max |(Jx + G Jy) - ((1 - iG)/2 J+ + (1 + iG)/2 J-)| over sample G.
  double ladderDecompositionError = 0.0;
  double topWithI = 0.0;         ///< |j,j>, Gamma = i
  double bottomWithMinusI = 0.0; ///< |j,-j>, Gamma = -i
  double topWithMinusI = 0.0;    ///< |j,j>, Gamma = -i
  double bottomWithI = 0.0;      ///< |j,-j>, Gamma = i
  /// min over Gamma of sqrt(r_top^2 + r_bottom^2), found by a grid scan.
  double minJointResidual = 0.0;
  Complex minJointGamma{0.0, 0.0};
  /// Closed form of the same minimum, sqrt(j), attained at Gamma = 0.
  double closedFormMinJoint = 0.0;
  bool noCommonGamma = false;
};

inline SpinSaturationReport spinNoSaturationCheck(const SpinSystem& sys) {
  SpinSaturationReport rep;
  rep.twoJ = sys.twoJ();
  const StateVector top = sys.state(sys.twoJ());
  const StateVector bottom = sys.state(-sys.twoJ());
  auto residual = [&](Complex g, const StateVector& s) {
    return annihilationResidual(sys.Jx(), sys.Jy(), g, 0.0, 0.0, s);
  };

  for (const Complex g : {Complex(0.3, -1.7), Complex(-2.0, 0.5), kI, -kI}) {
    const ComplexMatrix lhs = sys.Jx() + g * sys.Jy();
    const ComplexMatrix rhs = 0.5 * (1.0 - kI * g) * sys.Jplus() + 0.5 * (1.0 + kI * g) * sys.Jminus();
    rep.ladderDecompositionError = std::max(rep.ladderDecompositionError, maxAbs(lhs - rhs));
  }

  rep.topWithI = residual(kI, top);
  rep.bottomWithMinusI = residual(-kI, bottom);
  rep.topWithMinusI = residual(-kI, top);
  rep.bottomWithI = residual(kI, bottom);

  rep.minJointResidual = std::numeric_limits<double>::infinity();
  const int steps = 81;
  for (int a = 0; a < steps; ++a) {
    for (int b = 0; b < steps; ++b) {
      const Complex g(-2.0 + 4.0 * a / (steps - 1), -2.0 + 4.0 * b / (steps - 1));
      const double rt = residual(g, top);
      const double rb = residual(g, bottom);
      const double joint = std::sqrt(rt * rt + rb * rb);
      if (joint < rep.minJointResidual) {
        rep.minJointResidual = joint;
        rep.minJointGamma = g;
      }
    }
  }
  rep.closedFormMinJoint = std::sqrt(sys.j());
  rep.noCommonGamma = rep.minJointResidual > 0.5 * rep.closedFormMinJoint;
  return rep;
}

// ---------------------------------------------------------------------------
// Harmonic oscillator truncated to Fock states n = 0..cutoff.

inline constexpr int kDefaultFockCutoff = 60;

class FockSystem {
public:
  explicit FockSystem(int cutoff = kDefaultFockCutoff, double mass = 1.0, double omega = 1.0,
                      double hbar = 1.0)
      : cutoff_(cutoff), mass_(mass), omega_(omega), hbar_(hbar) {
    if (cutoff < 1) throw DomainError("Fock cutoff must be at least 1");
    if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
      throw DomainError("mass, frequency and hbar must be positive");
    }
    const int dim = cutoff + 1;
    a_ = ComplexMatrix::Zero(dim, dim);
    h_ = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
      if (n > 0) a_(n - 1, n) = std::sqrt(static_cast<double>(n));
      h_(n, n) = (n + 0.5) * hbar * omega;
    }
    const ComplexMatrix ad = a_.adjoint();
    x_ = std::sqrt(hbar / (2.0 * mass * omega)) * (a_ + ad);
    p_ = kI * std::sqrt(hbar * mass * omega / 2.0) * (ad - a_);
  }

  int cutoff() const { return cutoff_; }
  Eigen::Index dim() const { return cutoff_ + 1; }
  double mass() const { return mass_; }
  double omega() const { return omega_; }
  double hbar() const { return hbar_; }

  const ComplexMatrix& X() const { return x_; }
  const ComplexMatrix& P() const { return p_; }
  const ComplexMatrix& H() const { return h_; }
  const ComplexMatrix& annihilation() const { return a_; }

  StateVector number(int n) const {
    if (n < 0 || n > cutoff_) throw DomainError("Fock level outside the truncation");
    return StateVector::basis(dim(), n);
  }

  /// Gibbs-weight mixture with p_n proportional to exp(-beta n), n <= cutoff.
  DensityMatrix thermal(double beta) const {
    if (!(beta > 0.0)) throw DomainError("thermal state needs beta > 0");
    RealVector p(dim());
    for (int n = 0; n <= cutoff_; ++n) p(n) = std::exp(-beta * n);
    p /= p.sum();
    return DensityMatrix(p.cast<Complex>().asDiagonal());
  }

  /// Thermal state whose infinite-dimensional purity (1-q)/(1+q), q = e^-beta, equals mu.
  DensityMatrix thermalWithPurity(double mu) const {
    if (!(mu > 0.0) || mu > 1.0) throw DomainError("purity must lie in (0, 1]");
    if (mu == 1.0) return DensityMatrix::pure(number(0));
    return thermal(-std::log((1.0 - mu) / (1.0 + mu)));
  }

  /// (dX)^2 in |n>: (2n+1) hbar / (2 m omega).
  double numberVarianceX(int n) const { return (2.0 * n + 1.0) * hbar_ / (2.0 * mass_ * omega_); }
  /// (dP)^2 in |n>: (2n+1) hbar m omega / 2.
  double numberVarianceP(int n) const { return (2.0 * n + 1.0) * hbar_ * mass_ * omega_ / 2.0; }

private:
  int cutoff_;
  double mass_, omega_, hbar_;
  ComplexMatrix a_, h_, x_, p_;
};

/// Population of the top two Fock levels, where truncation distorts X and P.
inline double truncationWeight(const DensityMatrix& rho) {
  const Eigen::Index n = rho.dim();
  double w = 0.0;
  for (Eigen::Index k = std::max<Eigen::Index>(0, n - 2); k < n; ++k) w += rho.matrix()(k, k).real();
  return w;
}

/// Evaluate f(cutoff) and f(2*cutoff); throw NoConvergence if they differ by more
/// than relTol relative to max(1, |f|). Returns the value at `cutoff`.
template <class F>
double withCutoffDoubling(F&& f, int cutoff, double relTol) {
  const double a = f(cutoff);
  const double b = f(2 * cutoff);
  if (std::abs(a - b) > relTol * std::max(1.0, std::abs(a))) {
    throw NoConvergence("Fock truncation not converged: " + std::to_string(a) + " vs " +
                        std::to_string(b));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Gaussian wave packets <x|psi> = (2 pi s^2)^(-1/4) e^{i p x / hbar} e^{-(x - x0)^2 / (4 s^2)}.

struct GaussianPacket {
  double center = 0.0;
  double momentum = 0.0;
  double width = 1.0;

  GaussianPacket() = default;
  GaussianPacket(double center_, double momentum_, double width_)
      : center(center_), momentum(momentum_), width(width_) {
    if (!(width > 0.0)) throw DomainError("Gaussian width must be positive");
  }

  Complex operator()(double x, double hbar = 1.0) const {
    const double norm = std::pow(2.0 * std::numbers::pi * width * width, -0.25);
    const double d = x - center;
    return norm * std::exp(kI * (momentum * x / hbar)) * std::exp(-d * d / (4.0 * width * width));
  }

  /// Covers +-12 widths around the center.
  Grid1D defaultGrid(int points = 512) const {
    return Grid1D(points, std::abs(center) + 12.0 * width);
  }
};

/// Closed-form moments: <X> = x0, <P> = p0, dX = s, dP = hbar / (2 s).
inline PhaseSpaceMoments gaussianMoments(const GaussianPacket& p, double hbar = 1.0) {
  PhaseSpaceMoments m;
  m.meanX = p.center;
  m.meanP = p.momentum;
  m.varX = p.width * p.width;
  const double dP = hbar / (2.0 * p.width);
  m.varP = dP * dP;
  return m;
}

namespace detail {

/// The momentum content up to |p| + 12 dP must sit inside the grid's band pi/h.
inline void requireBandLimited(const Grid1D& g, double meanP, double dP, double hbar) {
  if ((std::abs(meanP) + 12.0 * dP) / hbar > std::numbers::pi / g.step()) {
    throw GridTooCoarse("grid step " + std::to_string(g.step()) +
                        " does not resolve the momentum spectrum");
  }
}

} // namespace detail

inline StateVector sampleGaussian(const GaussianPacket& p, const Grid1D& g, double hbar = 1.0) {
  detail::requireBandLimited(g, p.momentum, hbar / (2.0 * p.width), hbar);
  if (std::abs(p.center) + 8.0 * p.width > g.halfExtent) {
    throw GridTooCoarse("grid extent does not cover the packet");
  }
  return sampleWavefunction([&](double x) { return p(x, hbar); }, g);
}

// ---------------------------------------------------------------------------
// Two-mode Gaussian Psi(xA, xB) ~ exp(-(xA - xB)^2 s^2) exp(-(xA + xB)^2 / (16 W^2)).

struct EPRGaussian {
  double sigma = 1.0;
  double omega = 1.0;
  int gridPoints = 512;
  /// Half-width of the square grid; defaults to 8 standard deviations of xA.
  std::optional<double> halfExtent;

  EPRGaussian() = default;
  EPRGaussian(double sigma_, double omega_, int points = 512,
              std::optional<double> extent = std::nullopt)
      : sigma(sigma_), omega(omega_), gridPoints(points), halfExtent(extent) {
    if (!(sigma > 0.0) || !(omega > 0.0)) throw DomainError("sigma and Omega must be positive");
  }

  double closedFormDX() const { return std::sqrt(omega * omega + 1.0 / (16.0 * sigma * sigma)); }

  Grid1D grid() const { return Grid1D(gridPoints, halfExtent.value_or(8.0 * closedFormDX())); }

  double amplitude(double xa, double xb) const {
    const double u = xa - xb;
    const double v = xa + xb;
    return std::exp(-u * u * sigma * sigma - v * v / (16.0 * omega * omega));
  }
};

struct EPRMoments {
  double dXA = 0.0;
  double dPA = 0.0;
  double meanXA = 0.0;
  double meanPA = 0.0;
  double product() const { return dXA * dPA; }
};

/// dXA = sqrt(W^2 + 1/(16 s^2)), dPA = hbar sqrt(s^2 + 1/(16 W^2)).
inline EPRMoments eprClosedForm(const EPRGaussian& e, double hbar = 1.0) {
  EPRMoments m;
  m.dXA = e.closedFormDX();
  m.dPA = hbar * std::sqrt(e.sigma * e.sigma + 1.0 / (16.0 * e.omega * e.omega));
  return m;
}

/// Samples on the square grid, as a dimA = dimB = points bipartite state.
inline BipartiteState eprGridState(const EPRGaussian& e) {
  const Grid1D g = e.grid();
  const int n = g.points;
  ComplexVector amps(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) amps(static_cast<Eigen::Index>(i) * n + j) = e.amplitude(g.x(i), g.x(j));
  return BipartiteState(n, n, std::move(amps));
}

namespace detail {

inline EPRMoments eprMomentsOnGrid(const EPRGaussian& e, double hbar, Derivative method) {
  const Grid1D g = e.grid();
  const int n = g.points;
  // Amplitudes scaled by h so that sum |psi|^2 = 1.
  ComplexMatrix psi(n, n); // rows: xA, cols: xB
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) psi(i, j) = e.amplitude(g.x(i), g.x(j));
  psi /= psi.norm();

  double meanX = 0.0, meanX2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = psi.row(i).squaredNorm();
    meanX += w * g.x(i);
    meanX2 += w * g.x(i) * g.x(i);
  }
  double meanP = 0.0, meanP2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const ComplexVector col = psi.col(j);
    const ComplexVector pcol = -kI * hbar * derivative(col, g, method);
    meanP += col.dot(pcol).real();
    meanP2 += pcol.squaredNorm();
  }
  EPRMoments m;
  m.meanXA = meanX;
  m.meanPA = meanP;
  m.dXA = std::sqrt(std::max(meanX2 - meanX * meanX, 0.0));
  m.dPA = std::sqrt(std::max(meanP2 - meanP * meanP, 0.0));
  return m;
}

} // namespace detail

/// Grid quadrature of the xA marginal and a momentum derivative along xA.
/// Throws GridTooCoarse when the grid does not cover 6 standard deviations or
/// when halving the resolution changes the moments by more than convergenceTol.
inline EPRMoments eprGridMoments(const EPRGaussian& e, double hbar = 1.0,
                                 Derivative method = Derivative::Spectral,
                                 double convergenceTol = 1e-6) {
  const EPRMoments fine = detail::eprMomentsOnGrid(e, hbar, method);
  if (6.0 * fine.dXA > e.grid().halfExtent) {
    throw GridTooCoarse("grid extent covers fewer than 6 standard deviations of xA");
  }
  EPRGaussian coarse = e;
  coarse.gridPoints = e.gridPoints / 2;
  coarse.halfExtent = e.grid().halfExtent;
  const EPRMoments half = detail::eprMomentsOnGrid(coarse, hbar, method);
  const double dx = std::abs(fine.dXA - half.dXA) / fine.dXA;
  const double dp = std::abs(fine.dPA - half.dPA) / fine.dPA;
  if (std::max(dx, dp) > convergenceTol) {
    throw GridTooCoarse("grid moments not converged under resolution halving (relative change " +
                        std::to_string(std::max(dx, dp)) + ")");
  }
  return fine;
}

// ---------------------------------------------------------------------------
// Solutions of the P,Q annihilation equation on a grid.

struct GridState {
  Grid1D grid;
  StateVector psi;
};

/// psi(q) = C e^{i <P> q / hbar} exp(-(gI - i gR)(q - <Q>)^2 / (2 hbar)).
///
/// Annihilated by Q~ - (1/Gamma) P~ with Gamma = gR + i gI; for gR = 0 this is
/// Q~ + (i / gI) P~. Widths: dQ^2 = hbar / (2 gI), and dQ dP = hbar / 2 when gR = 0.
inline GridState pqGaussianSolution(double meanP, double meanQ, double gammaI,
                                    double gammaR = 0.0, double hbar = 1.0,
                                    std::optional<Grid1D> grid = std::nullopt) {
  if (!(gammaI > 0.0)) throw DomainError("Gamma_I must be positive");
  const double dQ = std::sqrt(hbar / (2.0 * gammaI));
  const double dP = std::sqrt(hbar * (gammaI * gammaI + gammaR * gammaR) / (2.0 * gammaI));
  const Grid1D g = grid.value_or(Grid1D(512, std::abs(meanQ) + 12.0 * dQ));
  if (std::abs(meanQ) + 8.0 * dQ > g.halfExtent) {
    throw GridTooCoarse("grid extent does not cover the Gaussian of width " + std::to_string(dQ));
  }
  detail::requireBandLimited(g, meanP, dP, hbar);
  const Complex a(gammaI, -gammaR);
  auto psi = [&](double q) {
    const double d = q - meanQ;
    return std::exp(kI * (meanP * q / hbar)) * std::exp(-a * d * d / (2.0 * hbar));
  };
  return {g, sampleWavefunction(psi, g)};
}

} // namespace minunc
