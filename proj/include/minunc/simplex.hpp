#pragma once

// Nelder-Mead downhill simplex with dimension-adaptive coefficients.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "linalg.hpp"

namespace minunc {

struct SimplexOptions {
  int maxIters = 2000;
  /// Stop when max |f_i - f_best| over the simplex drops below this.
  double fTol = 1e-14;
  /// Stop when the simplex diameter drops below this.
  double xTol = 1e-12;
  double initialStep = 0.25;
};

struct SimplexResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

inline SimplexResult nelderMead(const std::function<double(const RealVector&)>& f,
                                const RealVector& start, const SimplexOptions& opt = {}) {
  const Eigen::Index n = start.size();
  if (n == 0) throw DimensionMismatch("empty starting point");
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  SimplexResult res;
  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), start);
  std::vector<double> vals(pts.size());
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += opt.initialStep;
  auto eval = [&](const RealVector& x) {
    ++res.evaluations;
    return f(x);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(pts.size());
  for (int it = 0; it < opt.maxIters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    res.iterations = it;

    double spread = 0.0;
    double diameter = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      spread = std::max(spread, std::abs(vals[i] - vals[best]));
      diameter = std::max(diameter, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
    }
    if (spread <= opt.fTol || diameter <= opt.xTol) {
      res.converged = true;
      break;
    }

    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= dn;

    const RealVector xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const RealVector xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + gamma * (xr - centroid))
                                  : RealVector(centroid - gamma * (centroid - pts[worst]));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + delta * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto bestIt = std::min_element(vals.begin(), vals.end());
  const auto bi = static_cast<std::size_t>(bestIt - vals.begin());
  res.x = pts[bi];
  res.value = vals[bi];
  return res;
}

} // namespace minunc
