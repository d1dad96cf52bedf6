#pragma once

// Claim suites run by `minunc verify`. Each claim records the measured
// residual and the tolerance it was held to.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "mixedstate.hpp"
#include "models.hpp"
#include "random.hpp"
#include "search.hpp"
#include "uncertainty.hpp"

namespace minunc::suites {

struct Claim {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Claim> claims;

  bool passed() const {
    for (const auto& c : claims)
      if (!c.passed) return false;
    return true;
  }

  /// residual <= tolerance
  void atMost(std::string name, double residual, double tolerance) {
    claims.push_back({std::move(name), residual <= tolerance, residual, tolerance});
  }
  /// value > threshold, stored as residual = value, tolerance = threshold.
  void above(std::string name, double value, double threshold) {
    claims.push_back({std::move(name), value > threshold, value, threshold});
  }
  void holds(std::string name, bool ok) { claims.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.0}); }
};

struct SuiteConfig {
  double tol = 1e-10;
  std::uint64_t seed = 20240601;
  double hbar = 1.0;
  int gridPoints = 512;
  int fockCutoff = kDefaultFockCutoff;
};

inline std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{"spin", "oscillator", "epr", "rank", "mixed"};
  return names;
}

inline ComplexMatrix pauliX() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix pauliY() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline ComplexMatrix pauliZ() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// c1 |a1>|0> + c2 |a2>|1> with B = C^2.
inline BipartiteState branchState(double c1, double c2, const StateVector& a1, const StateVector& a2) {
  return TwoBranchState{c1, c2, a1, a2}.bipartite();
}

inline SuiteReport spinSuite(const SuiteConfig& cfg) {
  SuiteReport rep{"spin", {}};
  for (const int twoJ : {1, 2, 3}) {
    const SpinSystem sys(twoJ);
    const double j = sys.j();
    const std::string tag = "2j=" + std::to_string(twoJ);
    const SpinSaturationReport s = spinNoSaturationCheck(sys);
    rep.atMost(tag + " ladder decomposition", s.ladderDecompositionError, 1e-12);
    rep.atMost(tag + " |j,j> annihilated at Gamma=i", s.topWithI, 1e-12);
    rep.atMost(tag + " |j,-j> annihilated at Gamma=-i", s.bottomWithMinusI, 1e-12);
    rep.above(tag + " no common Gamma for both extremal states", s.minJointResidual, 0.5 * std::sqrt(j));

    const StateVector top = sys.state(twoJ);
    const StateVector bottom = sys.state(-twoJ);
    double worstProduct = 0.0;
    double worstRHS = 0.0;
    double minGap = std::numeric_limits<double>::infinity();
    bool anySaturable = false;
    for (int k = 1; k <= 9; ++k) {
      const double w1 = 0.1 * k;
      const BipartiteState psi = branchState(std::sqrt(w1), std::sqrt(1.0 - w1), top, bottom);
      const SaturationReport r = saturationAnalysis(sys.Jx(), sys.Jy(), psi, Bound::HUR);
      const double jz = j * (2.0 * w1 - 1.0);
      worstProduct = std::max(worstProduct, std::abs(r.uncertainty.product() - 0.25 * j * j));
      worstRHS = std::max(worstRHS, std::abs(r.uncertainty.hurRHS - 0.25 * jz * jz));
      minGap = std::min(minGap, r.uncertainty.hurGap);
      anySaturable = anySaturable || r.verdict == Verdict::Saturable;
    }
    rep.atMost(tag + " product equals j^2/4", worstProduct, cfg.tol);
    rep.atMost(tag + " RHS equals <Jz>^2/4", worstRHS, cfg.tol);
    rep.above(tag + " strict gap for |c1|^2 in 0.1..0.9", minGap, cfg.tol);
    rep.holds(tag + " no entangled state judged saturable", !anySaturable);

    const BipartiteState edge = branchState(1.0, 0.0, top, bottom);
    const UncertaintyReport e = saturationAnalysis(sys.Jx(), sys.Jy(), edge, Bound::HUR).uncertainty;
    rep.atMost(tag + " equality when c2 = 0", std::abs(e.hurGap), cfg.tol);
  }
  return rep;
}

inline SuiteReport oscillatorSuite(const SuiteConfig& cfg) {
  SuiteReport rep{"oscillator", {}};
  const FockSystem fock(cfg.fockCutoff, 1.0, 1.0, cfg.hbar);
  const double h2 = 0.25 * cfg.hbar * cfg.hbar;
  double worstFormula = 0.0;
  bool onlyGround = true;
  for (int n1 = 0; n1 <= 3; ++n1) {
    for (int n2 = n1; n2 <= 3; ++n2) {
      const BipartiteState psi =
          branchState(std::sqrt(0.5), std::sqrt(0.5), fock.number(n1), fock.number(n2));
      const UncertaintyReport u = evaluate(fock.X(), fock.P(), partialTraceB(psi));
      const double s = 0.5 * (2 * n1 + 1) + 0.5 * (2 * n2 + 1);
      worstFormula = std::max(worstFormula, std::abs(u.product() - h2 * s * s));
      const bool saturated = std::abs(u.hurGap) <= cfg.tol;
      if (saturated != (n1 == 0 && n2 == 0)) onlyGround = false;
    }
  }
  const BipartiteState psi02 = branchState(std::sqrt(0.5), std::sqrt(0.5), fock.number(0), fock.number(2));
  const UncertaintyReport u02 = evaluate(fock.X(), fock.P(), partialTraceB(psi02));
  rep.atMost("(0,2) product equals 9/4 hbar^2", std::abs(u02.product() - 9.0 * h2), 1e-8 * std::max(1.0, h2));
  rep.above("(0,2) strictly above hbar^2/4", u02.product() - h2, cfg.tol);
  rep.atMost("product equals (hbar^2/4)(sum p (2n+1))^2 for n <= 3", worstFormula, 1e-8 * std::max(1.0, h2));
  rep.holds("only (0,0) reaches hbar^2/4", onlyGround);
  const BipartiteState psi00 = branchState(std::sqrt(0.5), std::sqrt(0.5), fock.number(0), fock.number(0));
  rep.holds("(0,0) branch state has Schmidt rank 1", schmidt(psi00).rank == 1);
  return rep;
}

inline SuiteReport eprSuite(const SuiteConfig& cfg) {
  SuiteReport rep{"epr", {}};
  for (const double sigma : {0.5, 1.0, 2.0}) {
    const EPRGaussian e(sigma, 1.0 / (4.0 * sigma), cfg.gridPoints);
    const EPRMoments c = eprClosedForm(e, cfg.hbar);
    const std::string tag = "sigma=" + label(sigma);
    rep.atMost(tag + " closed-form product at locus equals hbar/2", std::abs(c.product() - 0.5 * cfg.hbar),
               1e-14);
    const EPRMoments g = eprGridMoments(e, cfg.hbar);
    rep.atMost(tag + " grid product matches closed form", std::abs(g.product() - c.product()) / c.product(),
               1e-4);
  }
  const EPRGaussian locus(1.0, 0.25, cfg.gridPoints);
  rep.holds("Schmidt rank 1 at Omega = 1/(4 sigma)", schmidt(eprGridState(locus)).rank == 1);
  const EPRGaussian off(1.0, 1.0, cfg.gridPoints);
  rep.holds("Schmidt rank >= 2 at sigma = Omega = 1", schmidt(eprGridState(off)).rank >= 2);
  const EPRMoments go = eprGridMoments(off, cfg.hbar);
  const EPRMoments co = eprClosedForm(off, cfg.hbar);
  rep.atMost("grid product matches closed form at sigma = Omega = 1",
             std::abs(go.product() - co.product()) / co.product(), 1e-4);
  rep.above("product above hbar/2 off the locus", co.product() - 0.5 * cfg.hbar, cfg.tol);
  return rep;
}

inline SuiteReport rankSuite(const SuiteConfig& cfg) {
  SuiteReport rep{"rank", {}};
  Rng rng(cfg.seed);
  const SpinSystem spin1(2);
  int saturable = 0;
  double minRankGap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index d = k % 2 == 0 ? 2 : 3;
    const BipartiteState psi = randomEntangledState(d, d, 0.2, rng);
    ComplexMatrix x, y;
    if (k % 4 < 2) {
      x = d == 2 ? pauliX() : spin1.Jx();
      y = d == 2 ? pauliY() : spin1.Jy();
    } else {
      do {
        x = randomHermitian(d, rng);
        y = randomHermitian(d, rng);
      } while (commutator(x, y).norm() <= 1e-6);
    }
    for (const Bound b : {Bound::HUR, Bound::SR}) {
      const SaturationReport r = saturationAnalysis(x, y, psi, b);
      if (r.verdict == Verdict::Saturable) ++saturable;
      minRankGap = std::min(minRankGap, r.maxAnnihilationResidual());
    }
  }
  rep.atMost("no full-rank state with Schmidt floor 0.2 judged saturable", saturable, 0.0);
  rep.above("smallest annihilation residual over the ensemble", minRankGap, kDefaultSaturationTol);

  SearchProblem p;
  p.x = pauliX();
  p.y = pauliY();
  p.mode = Bound::SR;
  p.minSchmidtCoeff = 0.3;
  p.seed = cfg.seed;
  const SearchResult r = minimizeGap(p);
  const double g0 = 1.0 - std::pow(1.0 - 2.0 * 0.09, 2);
  rep.above("qubit search with delta = 0.3 stays at or above G0 = 1 - (1 - 2 delta^2)^2", r.bestGap,
            g0 - 1e-9);

  SearchProblem q;
  q.dimA = 3;
  q.dimB = 2;
  q.x = ComplexMatrix::Zero(3, 3);
  q.y = ComplexMatrix::Zero(3, 3);
  q.x.topLeftCorner(2, 2) = pauliX();
  q.y.topLeftCorner(2, 2) = pauliY();
  q.mode = Bound::HUR;
  q.minSchmidtCoeff = 0.3;
  q.seed = cfg.seed;
  const SearchResult h = saturationHunt(q, 2);
  rep.atMost("rank-2 witness in dimA = 3 with block observables", h.bestGap, 1e-6);
  const SaturationReport hw = saturationAnalysis(q.x, q.y, h.bestState, Bound::HUR, 1e-5);
  rep.holds("witness is entangled with Schmidt rank 2", hw.schmidtRank == 2);
  return rep;
}

inline SuiteReport mixedSuite(const SuiteConfig& cfg) {
  SuiteReport rep{"mixed", {}};
  Rng rng(cfg.seed);
  double worstMin = 0.0;
  double worstTrace = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index d = 2 + k % 4;
    const DensityMatrix rho = randomDensityMatrix(d, 1 + k % static_cast<int>(d), rng);
    const ComplexMatrix x = randomHermitian(d, rng);
    const ComplexMatrix y = randomHermitian(d, rng);
    for (const Bound b : {Bound::HUR, Bound::SR}) {
      const VariationalCurve c = dCurve(x, y, rho, b);
      const double scale = std::max(1.0, std::abs(c.minimizerValue));
      worstMin = std::max(worstMin, std::abs(c(c.minimizerPoint) - c.minimizerValue) / scale);
      const SaturatorOperator s = makeSaturator(x, y, rho, b);
      worstTrace = std::max(worstTrace, std::abs(s.expectationCdagC(rho) - s.minimumValue) / scale);
    }
  }
  rep.atMost("D(Gamma_min) equals closed-form minimum", worstMin, cfg.tol);
  rep.atMost("tr rho C^dagger C equals D_min", worstTrace, cfg.tol);

  const FockSystem fock(cfg.fockCutoff, 1.0, 1.0, cfg.hbar);
  double worstDM = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 14; ++k) {
    const double mu = 0.3 + 0.05 * k;
    const PurityBoundReport b = purityBounds(fock, fock.thermalWithPurity(mu));
    worstDM = std::max(worstDM, b.dmRHS - b.dmLHS);
  }
  rep.atMost("thermal states satisfy the purity-corrected bound for mu in [0.3, 1]", worstDM,
             1e-6 * std::max(1.0, cfg.hbar * cfg.hbar));

  double worstRound = 0.0;
  for (int k = 0; k <= 70; ++k) {
    const double s = 1e-6 * std::pow(10.0, k / 10.0);
    worstRound = std::max(worstRound, std::abs(entropyFromBeta(entropyToBeta(s)) - s));
  }
  rep.atMost("entropy to beta round trip over S in [1e-6, 10]", worstRound, 1e-10);
  rep.atMost("Phi(1) = 1", std::abs(phiOfMu(1.0) - 1.0), 0.0);
  rep.atMost("Phi(0.5) matches direct evaluation", std::abs(phiOfMu(0.5) - (4.0 + std::sqrt(18.25)) / 4.5),
             1e-12);

  double worstEq = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index da = 2 + k % 3;
    const Eigen::Index db = 2 + (k / 3) % 3;
    const BipartiteState psi = randomBipartiteState(da, db, rng);
    worstEq = std::max(worstEq,
                       equivalenceCheck(psi, randomHermitian(da, rng), randomHermitian(da, rng)).maxFieldDifference);
  }
  rep.atMost("pure-state and reduced-state reports agree", worstEq, cfg.tol);
  return rep;
}

inline SuiteReport runSuite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "spin") return spinSuite(cfg);
  if (name == "oscillator") return oscillatorSuite(cfg);
  if (name == "epr") return eprSuite(cfg);
  if (name == "rank") return rankSuite(cfg);
  if (name == "mixed") return mixedSuite(cfg);
  throw DomainError("unknown suite '" + name + "'");
}

} // namespace minunc::suites
