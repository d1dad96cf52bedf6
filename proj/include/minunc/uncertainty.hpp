#pragma once

// Heisenberg (HUR) and Schroedinger-Robertson (SR) evaluation, the closed forms
// for two-branch entangled states, and the saturation analysis built on the
// annihilation equation (X~ + Gamma Y~)|a_i> = 0 over Schmidt vectors.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace minunc {

enum class Bound { HUR, SR };

inline const char* toString(Bound b) { return b == Bound::HUR ? "HUR" : "SR"; }

/// Variances below this are treated as vanishing when classifying saturation.
inline constexpr double kVanishingVariance = 1e-10;
/// Denominator floor for the variational minimizer.
inline constexpr double kMinimizerVarianceFloor = 1e-14;
inline constexpr double kDefaultSaturationTol = 1e-8;

/// Moments entering both uncertainty relations for one (state, X, Y) triple.
///
/// `iCommutator` is the real number <i[X,Y]>, so |<[X,Y]>|^2 = iCommutator^2.
/// `anticommutator` is <{X~,Y~}> with X~ = X - <X>.
struct UncertaintyReport {
  double meanX = 0.0;
  double meanY = 0.0;
  double varX = 0.0;
  double varY = 0.0;
  double iCommutator = 0.0;
  double anticommutator = 0.0;
  double hurRHS = 0.0;
  double srRHS = 0.0;
  double hurGap = 0.0;
  double srGap = 0.0;

  double product() const { return varX * varY; }
  double rhs(Bound b) const { return b == Bound::HUR ? hurRHS : srRHS; }
  double gap(Bound b) const { return b == Bound::HUR ? hurGap : srGap; }
};

namespace detail {

/// Fill the derived fields from means, variances and <X~ Y~>.
inline UncertaintyReport assembleReport(double meanX, double meanY, double varX,
                                        double varY, Complex crossMoment) {
  UncertaintyReport r;
  r.meanX = meanX;
  r.meanY = meanY;
  r.varX = std::max(varX, 0.0);
  r.varY = std::max(varY, 0.0);
  // <[X,Y]> = 2i Im<X~Y~>, <{X~,Y~}> = 2 Re<X~Y~>.
  r.iCommutator = -2.0 * crossMoment.imag();
  r.anticommutator = 2.0 * crossMoment.real();
  r.hurRHS = 0.25 * r.iCommutator * r.iCommutator;
  r.srRHS = r.hurRHS + 0.25 * r.anticommutator * r.anticommutator;
  r.hurGap = r.varX * r.varY - r.hurRHS;
  r.srGap = r.varX * r.varY - r.srRHS;
  return r;
}

/// Mixed-state route on a raw matrix; callers are responsible for validity.
inline UncertaintyReport evaluateTrace(const ComplexMatrix& x, const ComplexMatrix& y,
                                       const ComplexMatrix& rho) {
  const Eigen::Index n = rho.rows();
  const double mx = (rho * x).trace().real();
  const double my = (rho * y).trace().real();
  const ComplexMatrix xt = x - mx * ComplexMatrix::Identity(n, n);
  const ComplexMatrix yt = y - my * ComplexMatrix::Identity(n, n);
  const ComplexMatrix rx = rho * xt;
  const double vx = (rx * xt).trace().real();
  const double vy = (rho * yt * yt).trace().real();
  const Complex cross = (rx * yt).trace();
  return assembleReport(mx, my, vx, vy, cross);
}

} // namespace detail

/// Pure-state route: works with X~|psi> and Y~|psi> directly.
inline UncertaintyReport evaluate(const ComplexMatrix& x, const ComplexMatrix& y,
                                  const StateVector& psi) {
  const double mx = expectation(x, psi);
  const double my = expectation(y, psi);
  const ComplexVector& v = psi.amplitudes();
  const ComplexVector xv = x * v - mx * v;
  const ComplexVector yv = y * v - my * v;
  return detail::assembleReport(mx, my, xv.squaredNorm(), yv.squaredNorm(), xv.dot(yv));
}

/// Mixed-state route: traces against rho.
inline UncertaintyReport evaluate(const ComplexMatrix& x, const ComplexMatrix& y,
                                  const DensityMatrix& rho) {
  detail::requireOperatorOn(x, rho.dim());
  detail::requireOperatorOn(y, rho.dim());
  requireHermitian(x, "X");
  requireHermitian(y, "Y");
  return detail::evaluateTrace(x, y, rho.matrix());
}

// ---------------------------------------------------------------------------
// Two-branch states c1|psi1>|alpha1> + c2|psi2>|alpha2>, <alpha_i|alpha_j> = delta_ij.

struct TwoBranchState {
  Complex c1;
  Complex c2;
  StateVector psi1;
  StateVector psi2;

  /// Rescales (c1, c2) to unit norm. psi1 and psi2 need not be orthogonal.
  TwoBranchState(Complex c1_, Complex c2_, StateVector psi1_, StateVector psi2_)
      : c1(c1_), c2(c2_), psi1(std::move(psi1_)), psi2(std::move(psi2_)) {
    if (psi1.dim() != psi2.dim()) throw DimensionMismatch("branch states differ in dimension");
    const double n = std::sqrt(std::norm(c1) + std::norm(c2));
    if (!(n > 0.0)) throw DomainError("branch weights are both zero");
    c1 /= n;
    c2 /= n;
  }

  double weight1() const { return std::norm(c1); }
  double weight2() const { return std::norm(c2); }

  /// The state on H_A (x) C^2 with |alpha_i> the computational basis of B.
  BipartiteState bipartite() const {
    ComplexMatrix d(psi1.dim(), 2);
    d.col(0) = c1 * psi1.amplitudes();
    d.col(1) = c2 * psi2.amplitudes();
    return BipartiteState::fromMatrix(d);
  }
};

/// Mean and variance of one observable in one branch.
struct BranchStats {
  double mean = 0.0;
  double var = 0.0;
};

/// Moments of (X, Y) in a single branch state.
struct BranchMoments {
  BranchStats x;
  BranchStats y;
  double iCommutator = 0.0; ///< <i[X,Y]> in the branch
};

inline BranchMoments branchMoments(const ComplexMatrix& x, const ComplexMatrix& y,
                                   const StateVector& psi) {
  const UncertaintyReport r = evaluate(x, y, psi);
  return {{r.meanX, r.varX}, {r.meanY, r.varY}, r.iCommutator};
}

/// Variance of O in the two-branch state from the branch statistics:
/// sum_i |c_i|^2 (dO)_i^2 + |c1|^2 |c2|^2 (<O>_1 - <O>_2)^2.
inline double twoBranchVariance(double w1, double w2, const BranchStats& b1,
                                const BranchStats& b2) {
  const double dm = b1.mean - b2.mean;
  return w1 * b1.var + w2 * b2.var + w1 * w2 * dm * dm;
}

inline double twoBranchVariance(const ComplexMatrix& o, const TwoBranchState& s) {
  const BranchStats b1{expectation(o, s.psi1), variance(o, s.psi1)};
  const BranchStats b2{expectation(o, s.psi2), variance(o, s.psi2)};
  return twoBranchVariance(s.weight1(), s.weight2(), b1, b2);
}

/// The seven-term expansion of (dX)^2_Psi (dY)^2_Psi in branch quantities.
/// Algebraically identical to the product of the two twoBranchVariance values.
inline double twoBranchProduct(double w1, double w2, const BranchMoments& b1,
                               const BranchMoments& b2) {
  const double sx1 = std::sqrt(b1.x.var), sy1 = std::sqrt(b1.y.var);
  const double sx2 = std::sqrt(b2.x.var), sy2 = std::sqrt(b2.y.var);
  const double dx = b1.x.mean - b2.x.mean;
  const double dy = b1.y.mean - b2.y.mean;
  const double w12 = w1 * w2;
  const double skew = sx1 * sy2 - sx2 * sy1;
  return w1 * w1 * b1.x.var * b1.y.var + w2 * w2 * b2.x.var * b2.y.var +
         2.0 * w12 * sx1 * sy1 * sx2 * sy2 + w12 * w12 * dy * dy * dx * dx +
         w12 * skew * skew +
         w12 * ((w1 * b1.x.var + w2 * b2.x.var) * dy * dy +
                (w1 * b1.y.var + w2 * b2.y.var) * dx * dx);
}

inline double twoBranchProduct(const ComplexMatrix& x, const ComplexMatrix& y,
                               const TwoBranchState& s) {
  return twoBranchProduct(s.weight1(), s.weight2(), branchMoments(x, y, s.psi1),
                          branchMoments(x, y, s.psi2));
}

/// One pass/fail test with the quantity it was decided on.
struct ConditionCheck {
  bool passed = false;
  double residual = 0.0;
};

/// Conditions (i)-(iv) for reaching the minimum, either for two branches or,
/// generalized, over all Schmidt vectors:
///   equalMeansX / equalMeansY -- branch means agree (with each other or with Psi),
///   branchesSaturate          -- every branch saturates the bound on its own,
///   balancedWidths            -- the branch width ratios agree.
struct ConditionSet {
  ConditionCheck equalMeansX;
  ConditionCheck equalMeansY;
  ConditionCheck branchesSaturate;
  ConditionCheck balancedWidths;

  bool allPassed() const {
    return equalMeansX.passed && equalMeansY.passed && branchesSaturate.passed &&
           balancedWidths.passed;
  }
};

inline ConditionSet necessaryConditions(const BranchMoments& b1, const BranchMoments& b2,
                                        double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  auto check = [tol](double r) { return ConditionCheck{r <= tol, r}; };
  const auto branchGap = [](const BranchMoments& b) {
    return std::abs(b.x.var * b.y.var - 0.25 * b.iCommutator * b.iCommutator);
  };
  ConditionSet c;
  c.equalMeansX = check(std::abs(b1.x.mean - b2.x.mean));
  c.equalMeansY = check(std::abs(b1.y.mean - b2.y.mean));
  c.branchesSaturate = check(std::max(branchGap(b1), branchGap(b2)));
  c.balancedWidths = check(std::abs(std::sqrt(b1.x.var * b2.y.var) -
                                    std::sqrt(b2.x.var * b1.y.var)));
  return c;
}

inline ConditionSet necessaryConditions(const ComplexMatrix& x, const ComplexMatrix& y,
                                        const TwoBranchState& s, double tol) {
  return necessaryConditions(branchMoments(x, y, s.psi1), branchMoments(x, y, s.psi2), tol);
}

// ---------------------------------------------------------------------------
// Annihilation equation and the variational Gamma.

/// ||((X - meanX) + gamma (Y - meanY)) a||_2
inline double annihilationResidual(const ComplexMatrix& x, const ComplexMatrix& y,
                                   Complex gamma, double meanX, double meanY,
                                   const ComplexVector& a) {
  detail::requireOperatorOn(x, a.size());
  detail::requireOperatorOn(y, a.size());
  const ComplexVector r = (x * a - meanX * a) + gamma * (y * a - meanY * a);
  return r.norm();
}

inline double annihilationResidual(const ComplexMatrix& x, const ComplexMatrix& y,
                                   Complex gamma, double meanX, double meanY,
                                   const StateVector& a) {
  return annihilationResidual(x, y, gamma, meanX, meanY, a.amplitudes());
}

/// Gamma minimizing tr rho (X~ + Gamma Y~)^dagger (X~ + Gamma Y~) from the moments.
/// HUR restricts Gamma to the imaginary axis, Gamma = i a_min with
/// a_min = -<i[X,Y]> / (2 dY^2); SR adds Re Gamma = -<{X~,Y~}> / (2 dY^2).
inline Complex gammaMinimizer(const UncertaintyReport& r, Bound mode) {
  if (r.varY < kMinimizerVarianceFloor) {
    throw ZeroVariance("variance of Y vanishes; minimizer undefined");
  }
  const double imag = -0.5 * r.iCommutator / r.varY;
  if (mode == Bound::HUR) return {0.0, imag};
  return {-0.5 * r.anticommutator / r.varY, imag};
}

inline Complex gammaMinimizer(const ComplexMatrix& x, const ComplexMatrix& y,
                              const StateVector& psi, Bound mode) {
  return gammaMinimizer(evaluate(x, y, psi), mode);
}

inline Complex gammaMinimizer(const ComplexMatrix& x, const ComplexMatrix& y,
                              const DensityMatrix& rho, Bound mode) {
  return gammaMinimizer(evaluate(x, y, rho), mode);
}

// ---------------------------------------------------------------------------
// Saturation analysis over the Schmidt decomposition.

enum class Verdict { Saturable, NotSaturable, TriviallySaturated };

inline const char* toString(Verdict v) {
  switch (v) {
  case Verdict::Saturable: return "Saturable";
  case Verdict::NotSaturable: return "NotSaturable";
  case Verdict::TriviallySaturated: return "TriviallySaturated";
  }
  return "?";
}

struct SaturationReport {
  Bound mode = Bound::HUR;
  UncertaintyReport uncertainty;
  RealVector schmidtCoefficients;
  int schmidtRank = 0;
  /// Gamma of the annihilation operator. When `rolesSwapped` the operator is
  /// Y~ + gamma X~ (dX^2 > 0 but dY^2 vanished).
  Complex gamma{0.0, 0.0};
  bool rolesSwapped = false;
  /// Per Schmidt vector i < rank.
  std::vector<double> annihilationResiduals;
  std::vector<double> expectationResiduals;
  std::vector<double> varianceRatioResiduals;
  std::vector<double> branchBoundResiduals;
  double offDiagonalMaxX = 0.0;
  double offDiagonalMaxY = 0.0;
  ConditionSet conditions;
  Verdict verdict = Verdict::NotSaturable;

  double maxAnnihilationResidual() const {
    return annihilationResiduals.empty()
               ? 0.0
               : *std::max_element(annihilationResiduals.begin(), annihilationResiduals.end());
  }
};

/// Decide whether the bipartite state can sit on the HUR or SR bound for
/// X (x) 1, Y (x) 1. Saturation holds iff every Schmidt vector a_i is
/// annihilated by X~ + Gamma Y~ with the variational Gamma of the reduced state.
inline SaturationReport saturationAnalysis(const ComplexMatrix& x, const ComplexMatrix& y,
                                           const BipartiteState& psi, Bound mode,
                                           double tol = kDefaultSaturationTol,
                                           std::optional<double> rankTolerance = std::nullopt) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  detail::requireOperatorOn(x, psi.dimA());
  detail::requireOperatorOn(y, psi.dimA());
  requireHermitian(x, "X");
  requireHermitian(y, "Y");

  SaturationReport rep;
  rep.mode = mode;
  const SchmidtDecomposition sd = schmidt(psi, rankTolerance);
  rep.schmidtCoefficients = sd.coefficients;
  rep.schmidtRank = sd.rank;
  const DensityMatrix rhoA = partialTraceB(psi);
  rep.uncertainty = evaluate(x, y, rhoA);
  const UncertaintyReport& u = rep.uncertainty;

  if (u.varX < kVanishingVariance && u.varY < kVanishingVariance) {
    rep.verdict = Verdict::TriviallySaturated;
  }

  // Operator pair in the order used by the annihilation equation.
  rep.rolesSwapped = u.varY < kMinimizerVarianceFloor && u.varX >= kMinimizerVarianceFloor;
  const ComplexMatrix& first = rep.rolesSwapped ? y : x;
  const ComplexMatrix& second = rep.rolesSwapped ? x : y;
  const double mFirst = rep.rolesSwapped ? u.meanY : u.meanX;
  const double mSecond = rep.rolesSwapped ? u.meanX : u.meanY;
  if (rep.verdict != Verdict::TriviallySaturated) {
    rep.gamma = rep.rolesSwapped ? gammaMinimizer(evaluate(y, x, rhoA), mode)
                                 : gammaMinimizer(u, mode);
  }

  const Eigen::Index n = psi.dimA();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix ft = first - mFirst * id;
  const ComplexMatrix st = second - mSecond * id;
  const double g2 = std::norm(rep.gamma);

  double meanDevX = 0.0, meanDevY = 0.0, branchWorst = 0.0, ratioWorst = 0.0;
  for (int i = 0; i < sd.rank; ++i) {
    const ComplexVector& a = sd.basisA[static_cast<std::size_t>(i)].amplitudes();
    const ComplexVector fa = ft * a;
    const ComplexVector sa = st * a;
    rep.annihilationResiduals.push_back((fa + rep.gamma * sa).norm());

    const BranchMoments bm = branchMoments(x, y, sd.basisA[static_cast<std::size_t>(i)]);
    const double dx = std::abs(bm.x.mean - u.meanX);
    const double dy = std::abs(bm.y.mean - u.meanY);
    meanDevX = std::max(meanDevX, dx);
    meanDevY = std::max(meanDevY, dy);
    rep.expectationResiduals.push_back(std::max(dx, dy));

    // dFirst_i^2 = |Gamma|^2 dSecond_i^2, measured about the Psi means.
    const double ratio = std::abs(fa.squaredNorm() - g2 * sa.squaredNorm());
    rep.varianceRatioResiduals.push_back(ratio);
    ratioWorst = std::max(ratioWorst, ratio);

    const UncertaintyReport bi = evaluate(x, y, sd.basisA[static_cast<std::size_t>(i)]);
    const double bgap = std::abs(bi.gap(mode));
    rep.branchBoundResiduals.push_back(bgap);
    branchWorst = std::max(branchWorst, bgap);
  }

  for (int i = 0; i < sd.rank; ++i) {
    for (int j = 0; j < sd.rank; ++j) {
      if (i == j) continue;
      const ComplexVector& ai = sd.basisA[static_cast<std::size_t>(i)].amplitudes();
      const ComplexVector& aj = sd.basisA[static_cast<std::size_t>(j)].amplitudes();
      rep.offDiagonalMaxX = std::max(rep.offDiagonalMaxX, std::abs(aj.dot(x * ai)));
      rep.offDiagonalMaxY = std::max(rep.offDiagonalMaxY, std::abs(aj.dot(y * ai)));
    }
  }

  auto check = [tol](double r) { return ConditionCheck{r <= tol, r}; };
  rep.conditions.equalMeansX = check(meanDevX);
  rep.conditions.equalMeansY = check(meanDevY);
  rep.conditions.branchesSaturate = check(branchWorst);
  rep.conditions.balancedWidths = check(ratioWorst);

  if (rep.verdict != Verdict::TriviallySaturated) {
    rep.verdict = rep.maxAnnihilationResidual() <= tol ? Verdict::Saturable
                                                       : Verdict::NotSaturable;
  }
  return rep;
}

} // namespace minunc
