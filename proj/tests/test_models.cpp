#include <catch_amalgamated.hpp>

#include <cmath>

#include "minunc/models.hpp"
#include "minunc/uncertainty.hpp"

using namespace minunc;
using Catch::Approx;

TEST_CASE("spin matrices satisfy the angular momentum algebra") {
  for (const int twoJ : {1, 2, 3, 4, 7}) {
    const SpinSystem s(twoJ);
    const double j = s.j();
    const ComplexMatrix casimir = s.Jx() * s.Jx() + s.Jy() * s.Jy() + s.Jz() * s.Jz();
    CHECK(maxAbs(casimir - j * (j + 1) * identity(s.dim())) < 1e-12);
    CHECK(maxAbs(commutator(s.Jx(), s.Jy()) - kI * s.Jz()) < 1e-12);
    CHECK(maxAbs(commutator(s.Jy(), s.Jz()) - kI * s.Jx()) < 1e-12);
    CHECK(maxAbs(s.Jplus() - (s.Jx() + kI * s.Jy())) < 1e-14);
    CHECK(isHermitian(s.Jx()));
    CHECK(isHermitian(s.Jy()));
  }
}

TEST_CASE("spin-1 Jx has the textbook form") {
  const SpinSystem s(2);
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix jx(3, 3);
  jx << 0, r, 0, r, 0, r, 0, r, 0;
  CHECK(maxAbs(s.Jx() - jx) < 1e-15);
}

TEST_CASE("J+ raises m") {
  const SpinSystem s(3);
  const ComplexVector up = s.Jplus() * s.state(1).amplitudes();
  // sqrt(j(j+1) - m(m+1)) with j = 3/2, m = 1/2 is sqrt(3).
  CHECK(std::abs(up(s.index(3)) - std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(up.norm() - std::sqrt(3.0)) < 1e-14);
  CHECK((s.Jplus() * s.state(3).amplitudes()).norm() < 1e-15);
  // |J+ |1, -1>| = sqrt(2).
  const SpinSystem one(2);
  CHECK((one.Jplus() * one.state(-2).amplitudes()).norm() == Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("spin variances in |j,m>") {
  const SpinSystem s(4);
  for (int twoM = -4; twoM <= 4; twoM += 2) {
    const SpinVariances v = spinVariances(s, twoM);
    CHECK(v.matrixVarJx == Approx(v.varJx).epsilon(1e-13));
    CHECK(v.matrixVarJy == Approx(v.varJy).epsilon(1e-13));
  }
  CHECK(spinVariances(s, 4).varJx == Approx(1.0));
}

TEST_CASE("invalid m is rejected") {
  const SpinSystem s(2);
  CHECK_THROWS_AS(s.index(3), InvalidM);
  CHECK_THROWS_AS(s.index(1), InvalidM);
  CHECK_THROWS_AS(s.state(-4), InvalidM);
  CHECK_THROWS_AS(SpinSystem(0), DomainError);
}

TEST_CASE("extremal spin states need opposite Gamma") {
  for (const int twoJ : {1, 2, 3}) {
    const SpinSystem s(twoJ);
    const SpinSaturationReport r = spinNoSaturationCheck(s);
    CHECK(r.ladderDecompositionError < 1e-14);
    CHECK(r.topWithI < 1e-14);
    CHECK(r.bottomWithMinusI < 1e-14);
    CHECK(r.topWithMinusI == Approx(std::sqrt(2.0 * s.j())).epsilon(1e-12));
    CHECK(r.bottomWithI == Approx(std::sqrt(2.0 * s.j())).epsilon(1e-12));
    CHECK(r.minJointResidual == Approx(std::sqrt(s.j())).epsilon(1e-12));
    CHECK(std::abs(r.minJointGamma) < 1e-12);
    CHECK(r.noCommonGamma);
  }
}

TEST_CASE("truncated oscillator reproduces the canonical commutator below the cutoff") {
  const FockSystem f(40, 2.0, 0.5, 1.7);
  const ComplexMatrix c = commutator(f.X(), f.P());
  CHECK(maxAbs(c.topLeftCorner(40, 40) - kI * 1.7 * identity(40)) < 1e-12);
  // The last diagonal entry carries the truncation defect -i hbar cutoff.
  CHECK(std::abs(c(40, 40) - (-kI * 1.7 * 40.0)) < 1e-10);
}

TEST_CASE("number-state variances scale with hbar, m and omega") {
  const FockSystem f(30, 2.0, 3.0, 0.5);
  for (const int n : {0, 1, 4}) {
    const StateVector s = f.number(n);
    CHECK(variance(f.X(), s) == Approx(f.numberVarianceX(n)).epsilon(1e-13));
    CHECK(variance(f.P(), s) == Approx(f.numberVarianceP(n)).epsilon(1e-13));
    CHECK(variance(f.X(), s) == Approx((2 * n + 1) * 0.5 / (2 * 2.0 * 3.0)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(f.number(31), DomainError);
}

TEST_CASE("thermal states carry the requested purity") {
  const FockSystem f(60);
  for (const double mu : {0.3, 0.5, 0.9}) {
    const DensityMatrix rho = f.thermalWithPurity(mu);
    CHECK(purity(rho) == Approx(mu).epsilon(1e-12));
    // <X^2> = (2 nbar + 1) / 2 and 2 nbar + 1 = 1 / mu.
    CHECK(variance(f.X(), rho) == Approx(0.5 / mu).epsilon(1e-10));
    CHECK(truncationWeight(rho) < 1e-14);
  }
  CHECK(purity(f.thermalWithPurity(1.0)) == Approx(1.0));
}

TEST_CASE("cutoff doubling detects unconverged truncation") {
  auto xVarHot = [](int cutoff) { return variance(FockSystem(cutoff).X(), FockSystem(cutoff).thermal(0.01)); };
  CHECK_THROWS_AS(withCutoffDoubling(xVarHot, 20, 1e-6), NoConvergence);
  auto xVarCold = [](int cutoff) { return variance(FockSystem(cutoff).X(), FockSystem(cutoff).thermal(2.0)); };
  CHECK(withCutoffDoubling(xVarCold, 40, 1e-12) == Approx(0.5 / std::tanh(1.0)).epsilon(1e-12));
}

TEST_CASE("sampled Gaussian packets match the closed-form moments") {
  const GaussianPacket p(1.5, -0.7, 0.8);
  for (const double hbar : {1.0, 0.25}) {
    const Grid1D g = p.defaultGrid(256);
    const PhaseSpaceMoments m = gridMoments(sampleGaussian(p, g, hbar), g, hbar);
    const PhaseSpaceMoments c = gaussianMoments(p, hbar);
    CHECK(m.meanX == Approx(c.meanX).epsilon(1e-12));
    CHECK(m.meanP == Approx(c.meanP).epsilon(1e-12));
    CHECK(m.dX() == Approx(c.dX()).epsilon(1e-12));
    CHECK(m.dP() == Approx(c.dP()).epsilon(1e-11));
    CHECK(m.dX() * m.dP() == Approx(0.5 * hbar).epsilon(1e-11));
  }
}

TEST_CASE("under-resolved packets are rejected") {
  const GaussianPacket narrow(0.0, 0.0, 0.01);
  CHECK_THROWS_AS(sampleGaussian(narrow, Grid1D(64, 10.0)), GridTooCoarse);
  const GaussianPacket wide(0.0, 0.0, 3.0);
  CHECK_THROWS_AS(sampleGaussian(wide, Grid1D(512, 5.0)), GridTooCoarse);
}

TEST_CASE("two-mode Gaussian closed form") {
  const EPRGaussian locus(1.3, 1.0 / (4.0 * 1.3));
  CHECK(eprClosedForm(locus).product() == Approx(0.5).epsilon(1e-15));
  CHECK(eprClosedForm(locus, 2.0).product() == Approx(1.0).epsilon(1e-15));
  const EPRGaussian off(1.0, 1.0);
  CHECK(eprClosedForm(off).dXA == Approx(std::sqrt(1.0 + 1.0 / 16.0)));
  CHECK(eprClosedForm(off).product() == Approx(1.0 + 1.0 / 16.0));
  CHECK_THROWS_AS(EPRGaussian(-1.0, 1.0), DomainError);
}

TEST_CASE("two-mode Gaussian grid moments converge") {
  const EPRGaussian e(0.8, 0.6, 256);
  const EPRMoments g = eprGridMoments(e);
  const EPRMoments c = eprClosedForm(e);
  CHECK(g.dXA == Approx(c.dXA).epsilon(1e-10));
  CHECK(g.dPA == Approx(c.dPA).epsilon(1e-10));
  CHECK(g.meanXA == Approx(0.0).margin(1e-12));
  CHECK(g.meanPA == Approx(0.0).margin(1e-12));
}

TEST_CASE("central differences are too coarse for 1e-6 convergence") {
  const EPRGaussian e(1.0, 1.0, 128);
  CHECK_THROWS_AS(eprGridMoments(e, 1.0, Derivative::CentralDifference), GridTooCoarse);
}

TEST_CASE("too narrow a grid extent is reported") {
  const EPRGaussian e(1.0, 1.0, 256, 3.0);
  CHECK_THROWS_AS(eprGridMoments(e), GridTooCoarse);
}

TEST_CASE("two-mode Gaussian disentangles at the locus") {
  CHECK(schmidt(eprGridState(EPRGaussian(0.7, 1.0 / 2.8, 128))).rank == 1);
  CHECK(schmidt(eprGridState(EPRGaussian(0.7, 1.0, 128))).rank >= 2);
}

TEST_CASE("P,Q Gaussian solves the annihilation equation") {
  for (const double hbar : {1.0, 0.5}) {
    const double gI = 1.7;
    const GridState s = pqGaussianSolution(0.4, -0.6, gI, 0.0, hbar);
    const ComplexMatrix q = positionMatrix(s.grid);
    const ComplexMatrix p = momentumMatrix(s.grid, hbar);
    const UncertaintyReport r = evaluate(q, p, s.psi);
    CHECK(r.meanX == Approx(-0.6).epsilon(1e-10));
    CHECK(r.meanY == Approx(0.4).epsilon(1e-10));
    CHECK(r.varX == Approx(hbar / (2.0 * gI)).epsilon(1e-10));
    CHECK(std::sqrt(r.varX * r.varY) == Approx(0.5 * hbar).epsilon(1e-10));
    CHECK(annihilationResidual(q, p, kI / gI, r.meanX, r.meanY, s.psi) < 1e-8);
  }
}

TEST_CASE("P,Q Gaussian with a real part of Gamma") {
  const GridState s = pqGaussianSolution(0.0, 0.0, 1.0, 0.6);
  const ComplexMatrix q = positionMatrix(s.grid);
  const ComplexMatrix p = momentumMatrix(s.grid);
  const Complex gamma(0.6, 1.0);
  // (P~ - Gamma Q~) psi = 0.
  CHECK(annihilationResidual(p, q, -gamma, 0.0, 0.0, s.psi) < 1e-8);
  CHECK(variance(q, s.psi) == Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(pqGaussianSolution(0.0, 0.0, -1.0), DomainError);
}
