#pragma once

// Variational form of the uncertainty relations for density matrices, the
// saturator operators C = X~ + Gamma_min Y~, and purity/entropy lower bounds
// for (P, Q).

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "linalg.hpp"
#include "models.hpp"
#include "uncertainty.hpp"

namespace minunc {

/// D(Gamma) = tr rho (X~ + Gamma Y~)^dagger (X~ + Gamma Y~) as a closed-form quadratic.
///
/// HUR restricts Gamma to i*a with a real:
///   D_hur(a) = dX^2 + a^2 dY^2 + a <i[X,Y]>.
/// SR lets Gamma = gR + i gI range over the complex plane:
///   D_sr(Gamma) = dX^2 + |Gamma|^2 dY^2 + gI <i[X,Y]> + gR <{X~,Y~}>.
struct VariationalCurve {
  Bound kind = Bound::HUR;
  UncertaintyReport moments;
  Complex minimizerPoint{0.0, 0.0};
  double minimizerValue = 0.0;

  double operator()(Complex gamma) const {
    const UncertaintyReport& m = moments;
    return m.varX + std::norm(gamma) * m.varY + gamma.imag() * m.iCommutator +
           gamma.real() * m.anticommutator;
  }

  /// D_hur(a), i.e. the curve on the imaginary axis.
  double atImaginary(double a) const { return (*this)(Complex(0.0, a)); }

  /// d^2 D / da^2 along either axis.
  double curvature() const { return 2.0 * moments.varY; }

  /// a_min for HUR (Im of the minimizer).
  double aMin() const { return minimizerPoint.imag(); }
};

/// dX^2 - (<i[X,Y]>^2 [+ <{X~,Y~}>^2]) / (4 dY^2).
inline double minimumValue(const UncertaintyReport& m, Bound kind) {
  const double num = m.iCommutator * m.iCommutator +
                     (kind == Bound::SR ? m.anticommutator * m.anticommutator : 0.0);
  return m.varX - 0.25 * num / m.varY;
}

inline VariationalCurve dCurve(const ComplexMatrix& x, const ComplexMatrix& y,
                               const DensityMatrix& rho, Bound kind) {
  VariationalCurve c;
  c.kind = kind;
  c.moments = evaluate(x, y, rho);
  c.minimizerPoint = gammaMinimizer(c.moments, kind);
  c.minimizerValue = minimumValue(c.moments, kind);
  return c;
}

/// C = X~ + Gamma_min Y~ for the state it was built from.
struct SaturatorOperator {
  ComplexMatrix matrix;
  Bound kind = Bound::HUR;
  Complex gamma{0.0, 0.0};
  double minimumValue = 0.0;
  DensityMatrix sourceState;

  /// tr rho C^dagger C, computed directly from the matrix.
  double expectationCdagC(const DensityMatrix& rho) const {
    return (rho.matrix() * matrix.adjoint() * matrix).trace().real();
  }
};

inline SaturatorOperator makeSaturator(const ComplexMatrix& x, const ComplexMatrix& y,
                                       const DensityMatrix& rho, Bound kind) {
  const VariationalCurve c = dCurve(x, y, rho, kind);
  const ComplexMatrix id = identity(rho.dim());
  const ComplexMatrix xt = x - c.moments.meanX * id;
  const ComplexMatrix yt = y - c.moments.meanY * id;
  return {xt + c.minimizerPoint * yt, kind, c.minimizerPoint, c.minimizerValue, rho};
}

struct MinimumStateReport {
  bool saturates = false;
  double traceCdagC = 0.0;
  /// Eigenvalues p_i > tol of rho and the matching ||C|a_i>||.
  std::vector<double> weights;
  std::vector<double> residuals;
};

/// rho reaches the minimum iff C annihilates every eigenvector with nonzero weight.
inline MinimumStateReport minimumStateCondition(const SaturatorOperator& c,
                                                const DensityMatrix& rho, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  detail::requireOperatorOn(c.matrix, rho.dim());
  MinimumStateReport rep;
  rep.traceCdagC = c.expectationCdagC(rho);
  rep.saturates = true;
  for (Eigen::Index k = 0; k < rho.dim(); ++k) {
    const double p = rho.eigenvalues()(k);
    if (p <= tol) continue;
    const double r = (c.matrix * rho.eigenvectors().col(k)).norm();
    rep.weights.push_back(p);
    rep.residuals.push_back(r);
    if (!(r < tol)) rep.saturates = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Purity and entropy bounds for (P, Q).

/// Approximate purity correction (accurate to about 1%):
/// Phi(mu) = (4 + sqrt(16 + 9 mu^2)) / (9 mu).
inline double phiOfMu(double mu) {
  if (!(mu > 0.0) || mu > 1.0) throw DomainError("purity must lie in (0, 1]");
  return (4.0 + std::sqrt(16.0 + 9.0 * mu * mu)) / (9.0 * mu);
}

/// Lower bound on dP dQ from purity alone: (hbar/2) * 8 / (9 mu).
inline double bastiaansRHS(double mu, double hbar = 1.0) {
  if (!(mu > 0.0) || mu > 1.0) throw DomainError("purity must lie in (0, 1]");
  return 0.5 * hbar * 8.0 / (9.0 * mu);
}

/// S(beta) = beta / (e^beta - 1) - ln(1 - e^-beta), the entropy of a thermal
/// oscillator at inverse temperature beta (in units of hbar omega).
inline double entropyFromBeta(double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (std::isinf(beta)) return 0.0;
  return beta / std::expm1(beta) - std::log(-std::expm1(-beta));
}

/// Returned for S = 0: the pure-state limit beta -> infinity.
inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// Inverts S(beta) by bisection. S is strictly decreasing in beta.
inline double entropyToBeta(double entropy) {
  if (!(entropy >= 0.0) || !std::isfinite(entropy)) throw DomainError("entropy must be >= 0");
  if (entropy == 0.0) return kInfiniteBeta;
  double lo = 1e-8;
  double hi = 100.0;
  while (entropyFromBeta(lo) < entropy) {
    lo *= 1e-3;
    if (lo < 1e-300) throw NoConvergence("entropy too large to bracket");
  }
  while (entropyFromBeta(hi) > entropy) {
    hi *= 2.0;
    if (hi > 1e6) throw NoConvergence("entropy too small to bracket");
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (entropyFromBeta(mid) > entropy ? lo : hi) = mid;
  }
  const double beta = 0.5 * (lo + hi);
  if (std::abs(entropyFromBeta(beta) - entropy) > 1e-10) {
    throw NoConvergence("bisection residual above 1e-10");
  }
  return beta;
}

/// (hbar^2/4) (1 + 2/(e^beta - 1))^2 with beta from the entropy; hbar^2/4 at S = 0.
inline double entropicRHS(double entropy, double hbar = 1.0) {
  const double beta = entropyToBeta(entropy);
  if (std::isinf(beta)) return 0.25 * hbar * hbar;
  const double f = 1.0 + 2.0 / std::expm1(beta);
  return 0.25 * hbar * hbar * f * f;
}

inline constexpr double kBoundSlack = 1e-8;

struct PurityBoundReport {
  double mu = 0.0;
  double phi = 0.0;
  double dX = 0.0;
  double dP = 0.0;
  double bastiaansRHS = 0.0;
  /// (dP)^2 (dQ)^2 - <{P~,Q~}>^2 / 4
  double dmLHS = 0.0;
  /// (hbar^2/4) Phi(mu)^2
  double dmRHS = 0.0;
  double entropy = 0.0;
  double beta = 0.0;
  double entropicRHS = 0.0;
  double truncationWeight = 0.0;
  bool dmSatisfied = false;
  bool entropicSatisfied = false;
  bool bastiaansSatisfied = false;

  bool satisfied() const { return dmSatisfied && entropicSatisfied; }
};

/// Bound report for a state with position q and momentum p operators on the same space.
inline PurityBoundReport purityBounds(const ComplexMatrix& q, const ComplexMatrix& p,
                                      const DensityMatrix& rho, double hbar = 1.0) {
  PurityBoundReport r;
  const UncertaintyReport u = evaluate(p, q, rho);
  r.mu = std::min(purity(rho), 1.0);
  r.phi = phiOfMu(r.mu);
  r.dX = std::sqrt(u.varY);
  r.dP = std::sqrt(u.varX);
  r.bastiaansRHS = bastiaansRHS(r.mu, hbar);
  r.dmLHS = u.varX * u.varY - 0.25 * u.anticommutator * u.anticommutator;
  r.dmRHS = 0.25 * hbar * hbar * r.phi * r.phi;
  r.entropy = vonNeumannEntropy(rho);
  r.beta = entropyToBeta(r.entropy);
  r.entropicRHS = entropicRHS(r.entropy, hbar);
  const double scale = std::max(1.0, 0.25 * hbar * hbar);
  r.dmSatisfied = r.dmLHS >= r.dmRHS - kBoundSlack * scale;
  r.entropicSatisfied = r.dmLHS >= r.entropicRHS - kBoundSlack * scale;
  r.bastiaansSatisfied = r.dX * r.dP >= r.bastiaansRHS - kBoundSlack * scale;
  return r;
}

inline PurityBoundReport purityBounds(const FockSystem& fock, const DensityMatrix& rho) {
  if (rho.dim() != fock.dim()) throw DimensionMismatch("density matrix does not match Fock cutoff");
  PurityBoundReport r = purityBounds(fock.X(), fock.P(), rho, fock.hbar());
  r.truncationWeight = truncationWeight(rho);
  return r;
}

// ---------------------------------------------------------------------------

/// Uncertainty moments of X (x) 1, Y (x) 1 computed two ways: on the full pure
/// state and on the reduced density matrix of A.
struct EquivalenceReport {
  UncertaintyReport pureRoute;
  UncertaintyReport reducedRoute;
  double maxFieldDifference = 0.0;
};

inline EquivalenceReport equivalenceCheck(const BipartiteState& psi, const ComplexMatrix& x,
                                          const ComplexMatrix& y) {
  EquivalenceReport rep;
  const ComplexMatrix idB = identity(psi.dimB());
  rep.pureRoute = evaluate(tensor(x, idB), tensor(y, idB), psi.asStateVector());
  rep.reducedRoute = evaluate(x, y, partialTraceB(psi));
  const UncertaintyReport& a = rep.pureRoute;
  const UncertaintyReport& b = rep.reducedRoute;
  for (const double d : {a.meanX - b.meanX, a.meanY - b.meanY, a.varX - b.varX, a.varY - b.varY,
                         a.iCommutator - b.iCommutator, a.anticommutator - b.anticommutator,
                         a.hurRHS - b.hurRHS, a.srRHS - b.srRHS, a.hurGap - b.hurGap,
                         a.srGap - b.srGap}) {
    rep.maxFieldDifference = std::max(rep.maxFieldDifference, std::abs(d));
  }
  return rep;
}

} // namespace minunc
