// Acceptance run: one PASS/FAIL line per criterion, with runtime and the
// measured quantities. Oracles here are built independently of the library
// routines they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minunc/minunc.hpp"

using namespace minunc;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------------------
// Oracles

/// Spin-j matrices from <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1)), basis m = j..-j.
struct SpinOracle {
  ComplexMatrix jx, jy, jz;
  explicit SpinOracle(int twoJ) {
    const int d = twoJ + 1;
    const double j = 0.5 * twoJ;
    ComplexMatrix jp = ComplexMatrix::Zero(d, d);
    jz = ComplexMatrix::Zero(d, d);
    for (int r = 0; r < d; ++r) {
      const double m = j - r;
      jz(r, r) = m;
      if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const ComplexMatrix jm = jp.adjoint();
    jx = 0.5 * (jp + jm);
    jy = Complex(0, -0.5) * (jp - jm);
  }
};

/// X = (a + a^dagger)/sqrt2, P = i(a^dagger - a)/sqrt2 with hbar = m = omega = 1.
struct FockOracle {
  ComplexMatrix x, p;
  explicit FockOracle(int cutoff) {
    const int d = cutoff + 1;
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    x = (a + a.adjoint()) / std::sqrt(2.0);
    p = Complex(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
  }
};

/// Moments of O (x) 1 from the full state vector, written out index by index.
struct PureMoments {
  double mx, my, vx, vy, icomm, anti;
};

PureMoments pureMoments(const BipartiteState& s, const ComplexMatrix& x, const ComplexMatrix& y) {
  const Eigen::Index da = s.dimA(), db = s.dimB();
  const ComplexVector& v = s.amplitudes();
  auto apply = [&](const ComplexMatrix& o) {
    ComplexVector r = ComplexVector::Zero(v.size());
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index b = 0; b < db; ++b) r(i * db + b) += o(i, k) * v(k * db + b);
    return r;
  };
  const ComplexVector xv = apply(x), yv = apply(y);
  const ComplexVector xxv = apply(x * x), yyv = apply(y * y), xyv = apply(x * y), yxv = apply(y * x);
  PureMoments m;
  m.mx = v.dot(xv).real();
  m.my = v.dot(yv).real();
  m.vx = v.dot(xxv).real() - m.mx * m.mx;
  m.vy = v.dot(yyv).real() - m.my * m.my;
  const Complex comm = v.dot(xyv) - v.dot(yxv);
  m.icomm = (Complex(0, 1) * comm).real();
  m.anti = (v.dot(xyv) + v.dot(yxv)).real() - 2.0 * m.mx * m.my;
  return m;
}

/// tr rho (X~ + G Y~)^dagger (X~ + G Y~) by explicit matrix products.
double dMatrix(const ComplexMatrix& rho, const ComplexMatrix& x, const ComplexMatrix& y, Complex g) {
  const Eigen::Index n = rho.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix xt = x - (rho * x).trace().real() * id;
  const ComplexMatrix yt = y - (rho * y).trace().real() * id;
  const ComplexMatrix c = xt + g * yt;
  return (rho * c.adjoint() * c).trace().real();
}

/// Golden-section minimum of a unimodal f on [lo, hi].
double goldenMin(const std::function<double(double)>& f, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Dense-scan argmin on [-L, L] followed by golden refinement in the best cell.
double scanArgmin(const std::function<double(double)>& f, double L, int points) {
  double best = f(-L);
  int bi = 0;
  const double h = 2.0 * L / (points - 1);
  for (int k = 1; k < points; ++k) {
    const double v = f(-L + k * h);
    if (v < best) {
      best = v;
      bi = k;
    }
  }
  const double at = -L + bi * h;
  return goldenMin(f, at - h, at + h);
}

// ---------------------------------------------------------------------------
// Criteria

Outcome criterion1() {
  double worstProduct = 0.0, worstRHS = 0.0, minGap = 1e300, edgeGap = 0.0, worstMatrix = 0.0;
  for (const int twoJ : {1, 2, 3}) {
    const SpinOracle o(twoJ);
    const SpinSystem sys(twoJ);
    worstMatrix = std::max({worstMatrix, maxAbs(sys.Jx() - o.jx), maxAbs(sys.Jy() - o.jy),
                            maxAbs(sys.Jz() - o.jz)});
    const double j = 0.5 * twoJ;
    for (int k = 0; k <= 10; ++k) {
      const double w1 = 0.1 * k;
      ComplexMatrix amp = ComplexMatrix::Zero(twoJ + 1, 2);
      amp(0, 0) = std::sqrt(w1);
      amp(twoJ, 1) = std::sqrt(1.0 - w1);
      const BipartiteState psi = BipartiteState::fromMatrix(amp);
      const UncertaintyReport r = evaluate(tensor(o.jx, identity(2)), tensor(o.jy, identity(2)),
                                           psi.asStateVector());
      // <Jz> from the weights: j w1 - j (1 - w1).
      const double jz = j * (2.0 * w1 - 1.0);
      const double quarterJz2 = 0.25 * jz * jz;
      if (k == 0 || k == 10) {
        edgeGap = std::max(edgeGap, std::abs(r.product() - quarterJz2));
        continue;
      }
      worstProduct = std::max(worstProduct, std::abs(r.product() - 0.25 * j * j));
      worstRHS = std::max(worstRHS, std::abs(r.hurRHS - quarterJz2));
      minGap = std::min(minGap, r.product() - quarterJz2);
    }
  }
  Outcome out;
  out.passed = worstMatrix < 1e-14 && worstProduct <= 1e-10 && worstRHS <= 1e-10 && minGap > 1e-10 &&
               edgeGap <= 1e-10;
  out.detail = "max|product - j^2/4| " + fmt("%.2e", worstProduct) + ", min strict gap " +
               fmt("%.4f", minGap) + ", gap at c1c2=0 " + fmt("%.2e", edgeGap);
  return out;
}

/// Independent grid oracle: xA marginal moments and <pA^2> from the analytic
/// derivative of the Gaussian, trapezoid sums on n x n points.
double eprOracleProduct(double sigma, double omega, int n) {
  const double dx = std::sqrt(omega * omega + 1.0 / (16.0 * sigma * sigma));
  const double L = 8.0 * dx;
  const double h = 2.0 * L / n;
  double norm = 0.0, x2 = 0.0, p2 = 0.0;
  const double s2 = sigma * sigma, w = 1.0 / (16.0 * omega * omega);
  for (int i = 0; i < n; ++i) {
    const double a = -L + i * h;
    for (int k = 0; k < n; ++k) {
      const double b = -L + k * h;
      const double u = a - b, v = a + b;
      const double psi = std::exp(-u * u * s2 - v * v * w);
      const double dpsi = psi * (-2.0 * u * s2 - 2.0 * v * w);
      norm += psi * psi;
      x2 += a * a * psi * psi;
      p2 += dpsi * dpsi;
    }
  }
  return std::sqrt(x2 / norm) * std::sqrt(p2 / norm);
}

Outcome criterion2() {
  double closedDev = 0.0, gridDev = 0.0, oracleDev = 0.0;
  for (const double sigma : {0.5, 1.0, 2.0}) {
    const EPRGaussian e(sigma, 1.0 / (4.0 * sigma), 512);
    const double c = eprClosedForm(e).product();
    closedDev = std::max(closedDev, std::abs(c - 0.5));
    const double g = eprGridMoments(e).product();
    gridDev = std::max(gridDev, std::abs(g - c) / c);
    oracleDev = std::max(oracleDev, std::abs(eprOracleProduct(sigma, e.omega, 512) - c) / c);
  }
  const EPRGaussian off(1.0, 1.0, 512);
  const double cOff = eprClosedForm(off).product();
  gridDev = std::max(gridDev, std::abs(eprGridMoments(off).product() - cOff) / cOff);
  oracleDev = std::max(oracleDev, std::abs(eprOracleProduct(1.0, 1.0, 512) - cOff) / cOff);
  const int rankLocus = schmidt(eprGridState(EPRGaussian(1.0, 0.25, 512))).rank;
  const int rankOff = schmidt(eprGridState(off)).rank;
  Outcome out;
  out.passed = closedDev <= 4 * std::numeric_limits<double>::epsilon() && gridDev <= 1e-4 &&
               oracleDev <= 1e-4 && rankLocus == 1 && rankOff >= 2;
  out.detail = "closed-form |product - 1/2| " + fmt("%.1e", closedDev) + ", grid rel dev " +
               fmt("%.1e", gridDev) + ", oracle rel dev " + fmt("%.1e", oracleDev) +
               ", Schmidt rank " + std::to_string(rankLocus) + " at locus, " +
               std::to_string(rankOff) + " at (1,1)";
  return out;
}

Outcome criterion3() {
  const FockOracle o(60);
  const FockSystem fock(60);
  const double opDev = std::max(maxAbs(fock.X() - o.x), maxAbs(fock.P() - o.p));
  auto product = [&](int n1, int n2) {
    ComplexMatrix amp = ComplexMatrix::Zero(61, 2);
    amp(n1, 0) = std::sqrt(0.5);
    amp(n2, 1) = std::sqrt(0.5);
    const BipartiteState psi = BipartiteState::fromMatrix(amp);
    const PureMoments m = pureMoments(psi, o.x, o.p);
    return std::pair{m.vx * m.vy, psi};
  };
  const auto [p02, psi02] = product(0, 2);
  const double lib02 = evaluate(fock.X(), fock.P(), partialTraceB(psi02)).product();
  bool onlyGround = true;
  double minOther = 1e300;
  for (int n1 = 0; n1 <= 4; ++n1) {
    for (int n2 = n1; n2 <= 4; ++n2) {
      const double p = product(n1, n2).first;
      const bool atBound = std::abs(p - 0.25) <= 1e-8;
      if (atBound != (n1 == 0 && n2 == 0)) onlyGround = false;
      if (n1 || n2) minOther = std::min(minOther, p - 0.25);
    }
  }
  const int rank00 = schmidt(product(0, 0).second).rank;
  Outcome out;
  out.passed = opDev < 1e-14 && std::abs(p02 - 2.25) <= 1e-8 && std::abs(lib02 - 2.25) <= 1e-8 &&
               onlyGround && minOther > 0.0 && rank00 == 1;
  out.detail = "(0,2) product " + fmt("%.12f", lib02) + " (oracle " + fmt("%.12f", p02) +
               "), only (0,0) at 1/4: " + (onlyGround ? "yes" : "no") + ", (0,0) Schmidt rank " +
               std::to_string(rank00);
  return out;
}

double readG0() {
  std::ifstream in(std::string(MINUNC_FIXTURE_DIR) + "/g0_qubit_sr.json");
  if (!in) throw std::runtime_error("missing fixture g0_qubit_sr.json");
  return nlohmann::json::parse(in).at("g0").get<double>();
}

Outcome criterion4() {
  Rng rng(4);
  const ComplexMatrix sx = suites::pauliX(), sy = suites::pauliY();
  const SpinOracle s1(2);
  int saturable = 0, cases = 0;
  double minResidual = 1e300;
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index d = k < 100 ? 2 : 3;
    const BipartiteState psi = randomEntangledState(d, d, 0.2, rng);
    const double cmin = schmidt(psi).coefficients.minCoeff();
    if (cmin < 0.2 - 1e-12) return {false, "generator produced Schmidt coefficient below 0.2"};
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
    pairs.emplace_back(d == 2 ? sx : s1.jx, d == 2 ? sy : s1.jy);
    ComplexMatrix x, y;
    do {
      x = randomHermitian(d, rng);
      y = randomHermitian(d, rng);
    } while (commutator(x, y).norm() <= 1e-6);
    pairs.emplace_back(x, y);
    for (const auto& [a, b] : pairs) {
      for (const Bound m : {Bound::HUR, Bound::SR}) {
        const SaturationReport r = saturationAnalysis(a, b, psi, m);
        ++cases;
        if (r.verdict == Verdict::Saturable) ++saturable;
        minResidual = std::min(minResidual, r.maxAnnihilationResidual());
      }
    }
  }
  const double g0 = readG0();
  SearchProblem p;
  p.x = sx;
  p.y = sy;
  p.mode = Bound::SR;
  p.minSchmidtCoeff = 0.3;
  p.seed = 4;
  const SearchResult r = minimizeGap(p);
  const PureMoments pm = pureMoments(r.bestState, sx, sy);
  const double reGap = pm.vx * pm.vy - 0.25 * pm.icomm * pm.icomm - 0.25 * pm.anti * pm.anti;
  const double floorOk = schmidt(r.bestState).coefficients.minCoeff() >= 0.3 - 1e-10;
  Outcome out;
  out.passed = saturable == 0 && r.bestGap >= g0 && std::abs(reGap - r.bestGap) <= 1e-10 && floorOk;
  out.detail = std::to_string(cases) + " analyses, " + std::to_string(saturable) +
               " saturable, min residual " + fmt("%.3f", minResidual) + "; search bestGap " +
               fmt("%.10f", r.bestGap) + " >= G0 " + fmt("%.10f", g0);
  return out;
}

Outcome criterion5() {
  SearchProblem q;
  q.dimA = 3;
  q.dimB = 2;
  q.x = ComplexMatrix::Zero(3, 3);
  q.y = ComplexMatrix::Zero(3, 3);
  q.x.topLeftCorner(2, 2) = suites::pauliX();
  q.y.topLeftCorner(2, 2) = suites::pauliY();
  q.mode = Bound::HUR;
  q.minSchmidtCoeff = 0.3;
  q.seed = 5;

  // Analytic witness first: c1 |e0>|0> + c2 |e2>|1>.
  ComplexMatrix amp = ComplexMatrix::Zero(3, 2);
  amp(0, 0) = std::sqrt(0.7);
  amp(2, 1) = std::sqrt(0.3);
  const PureMoments w = pureMoments(BipartiteState::fromMatrix(amp), q.x, q.y);
  const double analyticGap = w.vx * w.vy - 0.25 * w.icomm * w.icomm;

  const SearchResult r = saturationHunt(q, 2);
  const PureMoments m = pureMoments(r.bestState, q.x, q.y);
  const double reGap = m.vx * m.vy - 0.25 * m.icomm * m.icomm;
  const SchmidtDecomposition sd = schmidt(r.bestState);
  Outcome out;
  out.passed = std::abs(analyticGap) <= 1e-14 && r.witnessFound && reGap < 1e-6 && sd.rank == 2 &&
               sd.coefficients(1) >= 0.3 - 1e-10;
  out.detail = "analytic witness gap " + fmt("%.1e", analyticGap) + ", found gap " + fmt("%.2e", reGap) +
               ", Schmidt coefficients " + fmt("%.4f", sd.coefficients(0)) + ", " +
               fmt("%.4f", sd.coefficients(1));
  return out;
}

Outcome criterion6() {
  Rng rng(6);
  double worstArg = 0.0, worstMin = 0.0, worstTrace = 0.0, worstCurv = 0.0;
  int positive = 0, negative = 0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index d = 2 + k % 4;
    const DensityMatrix rho = randomDensityMatrix(d, 1 + k % static_cast<int>(d), rng);
    const ComplexMatrix x = randomHermitian(d, rng);
    const ComplexMatrix y = randomHermitian(d, rng);
    const ComplexMatrix& rm = rho.matrix();
    const VariationalCurve hur = dCurve(x, y, rho, Bound::HUR);
    const VariationalCurve sr = dCurve(x, y, rho, Bound::SR);
    (hur.moments.iCommutator >= 0.0 ? positive : negative)++;
    const double scale = std::max(1.0, hur.moments.varX);
    const double L = 2.0 * std::sqrt(hur.moments.varX / hur.moments.varY);

    // HUR: scan a on the imaginary axis.
    const double aScan = scanArgmin([&](double a) { return dMatrix(rm, x, y, Complex(0, a)); }, L, 401);
    worstArg = std::max(worstArg, std::abs(aScan - hur.aMin()) / (1.0 + std::abs(hur.aMin())));
    worstMin = std::max(worstMin, std::abs(dMatrix(rm, x, y, hur.minimizerPoint) - hur.minimizerValue) / scale);

    // SR: alternate golden searches over Re and Im from a coarse 2-D scan.
    double gr = 0.0, gi = 0.0, best = 1e300;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 0; j <= 40; ++j) {
        const double a = -L + 2.0 * L * i / 40, b = -L + 2.0 * L * j / 40;
        const double v = dMatrix(rm, x, y, Complex(a, b));
        if (v < best) best = v, gr = a, gi = b;
      }
    }
    for (int sweep = 0; sweep < 3; ++sweep) {
      gr = goldenMin([&](double a) { return dMatrix(rm, x, y, Complex(a, gi)); }, gr - L, gr + L);
      gi = goldenMin([&](double b) { return dMatrix(rm, x, y, Complex(gr, b)); }, gi - L, gi + L);
    }
    worstArg = std::max(worstArg, std::abs(Complex(gr, gi) - sr.minimizerPoint) /
                                      (1.0 + std::abs(sr.minimizerPoint)));
    worstMin = std::max(worstMin, std::abs(dMatrix(rm, x, y, sr.minimizerPoint) - sr.minimizerValue) / scale);

    for (const Bound b : {Bound::HUR, Bound::SR}) {
      const SaturatorOperator c = makeSaturator(x, y, rho, b);
      const double direct = (rm * c.matrix.adjoint() * c.matrix).trace().real();
      worstTrace = std::max(worstTrace, std::abs(direct - c.minimumValue) / scale);
    }

    // Second difference along a equals 2 dY^2 exactly for a quadratic.
    const double h = 1e-2;
    const double fd = (dMatrix(rm, x, y, Complex(0, hur.aMin() + h)) - 2.0 * dMatrix(rm, x, y, hur.minimizerPoint) +
                       dMatrix(rm, x, y, Complex(0, hur.aMin() - h))) / (h * h);
    worstCurv = std::max(worstCurv, std::abs(fd - hur.curvature()) / hur.curvature());
  }
  Outcome out;
  out.passed = worstArg <= 1e-5 && worstMin <= 1e-10 && worstTrace <= 1e-10 && worstCurv <= 1e-6 &&
               positive > 0 && negative > 0;
  out.detail = "argmin dev " + fmt("%.1e", worstArg) + ", D_min dev " + fmt("%.1e", worstMin) +
               ", tr rho C^+C dev " + fmt("%.1e", worstTrace) + ", curvature dev " + fmt("%.1e", worstCurv) +
               ", commutator signs +" + std::to_string(positive) + "/-" + std::to_string(negative);
  return out;
}

Outcome criterion7() {
  const FockSystem fock(60);
  const FockOracle o(60);
  double worstDM = -1e300;
  double worstClosed = 0.0;
  for (int k = 0; k <= 70; ++k) {
    const double mu = 0.3 + 0.01 * k;
    // Gibbs weights p_n = (1 - q) q^n with q = (1 - mu)/(1 + mu).
    const double q = (1.0 - mu) / (1.0 + mu);
    ComplexMatrix rho = ComplexMatrix::Zero(61, 61);
    for (int n = 0; n <= 60; ++n) rho(n, n) = (1.0 - q) * std::pow(q, n);
    rho /= rho.trace().real();
    const DensityMatrix r(rho);
    const PurityBoundReport b = purityBounds(fock, r);
    const double vx = (rho * o.x * o.x).trace().real();
    const double vp = (rho * o.p * o.p).trace().real();
    const double phi = (4.0 + std::sqrt(16.0 + 9.0 * mu * mu)) / (9.0 * mu);
    worstDM = std::max(worstDM, 0.25 * phi * phi - vx * vp);
    worstClosed = std::max(worstClosed, std::abs(b.dmLHS - vx * vp));
  }

  double worstRound = 0.0;
  for (int k = 0; k <= 700; ++k) {
    const double s = 1e-6 * std::pow(10.0, k / 100.0);
    const double beta = entropyToBeta(s);
    // Entropy from the Gibbs populations at this beta, summed directly.
    double direct = 0.0;
    const double q = std::exp(-beta);
    const double lq = std::log(q), l1q = std::log1p(-q);
    double qn = 1.0;
    for (long n = 0; qn > 1e-18; ++n, qn *= q) {
      direct -= (1.0 - q) * qn * (l1q + n * lq);
    }
    worstRound = std::max(worstRound, std::abs(entropyFromBeta(beta) - s));
    if (std::abs(direct - s) > 1e-9 * std::max(1.0, s)) return {false, "entropy formula disagrees with direct sum at S=" + fmt("%g", s)};
  }
  const double phi1 = phiOfMu(1.0);
  const double phiHalf = phiOfMu(0.5);
  const double direct = (4.0 + std::sqrt(16.0 + 9.0 * 0.25)) / 4.5;
  Outcome out;
  out.passed = worstDM <= 1e-6 && worstClosed <= 1e-10 && worstRound < 1e-10 && phi1 == 1.0 &&
               std::abs(phiHalf - direct) <= 1e-6;
  out.detail = "max (hbar^2/4)Phi^2 - dmLHS " + fmt("%.1e", worstDM) + ", round trip " + fmt("%.1e", worstRound) +
               ", Phi(1) " + fmt("%.17g", phi1) + ", Phi(0.5) " + fmt("%.7f", phiHalf) +
               " (direct evaluation " + fmt("%.7f", direct) + "; the quoted 1.838249 differs by " +
               fmt("%.1e", std::abs(1.838249 - direct)) + ")";
  return out;
}

Outcome criterion8() {
  Rng rng(8);
  double worst = 0.0, worstLib = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Eigen::Index da = 2 + k % 4;
    const Eigen::Index db = 2 + (k / 4) % 4;
    const BipartiteState psi = randomBipartiteState(da, db, rng);
    const ComplexMatrix x = randomHermitian(da, rng);
    const ComplexMatrix y = randomHermitian(da, rng);
    const UncertaintyReport red = evaluate(x, y, partialTraceB(psi));
    const PureMoments m = pureMoments(psi, x, y);
    const double hr = 0.25 * m.icomm * m.icomm;
    const double sr = hr + 0.25 * m.anti * m.anti;
    for (const double d : {red.meanX - m.mx, red.meanY - m.my, red.varX - m.vx, red.varY - m.vy,
                           red.iCommutator - m.icomm, red.anticommutator - m.anti, red.hurRHS - hr,
                           red.srRHS - sr, red.hurGap - (m.vx * m.vy - hr), red.srGap - (m.vx * m.vy - sr)}) {
      worst = std::max(worst, std::abs(d));
    }
    worstLib = std::max(worstLib, equivalenceCheck(psi, x, y).maxFieldDifference);
  }
  Outcome out;
  out.passed = worst <= 1e-10 && worstLib <= 1e-10;
  out.detail = "max field difference " + fmt("%.1e", worst) + " (library routes " + fmt("%.1e", worstLib) + ")";
  return out;
}

} // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    double budget;
    Outcome (*run)();
  };
  const std::vector<Entry> entries{
      {1, "spin-j entangled states stay strictly above the bound", 1.0, criterion1},
      {2, "two-mode Gaussian saturation locus", 30.0, criterion2},
      {3, "oscillator two-branch example", 5.0, criterion3},
      {4, "full Schmidt rank never saturates", 120.0, criterion4},
      {5, "rank-deficient saturation witness", 60.0, criterion5},
      {6, "variational identities", 60.0, criterion6},
      {7, "purity and entropy bounds", 30.0, criterion7},
      {8, "pure-entangled and reduced routes agree", 30.0, criterion8},
  };
  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.passed && dt < e.budget;
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s [%.2f s / %.0f s] %s\n", ok ? "PASS" : "FAIL", e.id, e.title, dt,
                e.budget, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
