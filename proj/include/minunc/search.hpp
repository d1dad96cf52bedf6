#pragma once

// Penalized simplex search for the smallest HUR/SR gap over bipartite pure
// states whose Schmidt coefficients stay above a floor.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "linalg.hpp"
#include "random.hpp"
#include "simplex.hpp"
#include "uncertainty.hpp"

namespace minunc {

struct SearchProblem {
  Eigen::Index dimA = 2;
  Eigen::Index dimB = 2;
  ComplexMatrix x;
  ComplexMatrix y;
  Bound mode = Bound::SR;
  /// delta: every Schmidt coefficient in play must be >= delta.
  double minSchmidtCoeff = 0.0;
  std::uint64_t seed = 1;
  int restarts = 6;
  int maxIters = 4000;
  /// Gap below which a state counts as a saturation witness.
  double tolerance = 1e-6;
};

struct SearchResult {
  double bestGap = std::numeric_limits<double>::infinity();
  BipartiteState bestState{1, 1, ComplexVector::Ones(1)};
  RealVector schmidtProfile;
  int iterations = 0;
  bool converged = false;
  /// Running best after each restart.
  std::vector<double> restartBest;
  /// 0 for minimizeGap, s for saturationHunt.
  int rankTarget = 0;
  bool witnessFound = false;
};

inline constexpr double kCommutingTol = 1e-10;
inline constexpr double kFloorSlack = 1e-10;
inline constexpr double kInitialPenaltyWeight = 10.0;

inline void validate(const SearchProblem& p) {
  if (p.dimA < 1 || p.dimB < 1) throw DomainError("dimensions must be positive");
  detail::requireOperatorOn(p.x, p.dimA);
  detail::requireOperatorOn(p.y, p.dimA);
  requireHermitian(p.x, "X");
  requireHermitian(p.y, "Y");
  if (commutator(p.x, p.y).norm() <= kCommutingTol) {
    throw DomainError("observables commute; the gap is trivially reachable");
  }
  const double r = static_cast<double>(std::min(p.dimA, p.dimB));
  if (!(p.minSchmidtCoeff >= 0.0) || !(p.minSchmidtCoeff < 1.0 / std::sqrt(r))) {
    throw DomainError("Schmidt floor must satisfy 0 <= delta < 1/sqrt(min(dimA, dimB))");
  }
  if (p.restarts < 1) throw DomainError("restarts must be >= 1");
  if (p.maxIters < 1) throw DomainError("maxIters must be >= 1");
  if (!(p.tolerance > 0.0)) throw DomainError("tolerance must be positive");
}

namespace detail {

/// Amplitude matrix A B^T from 2 (dimA + dimB) rank reals, or the full
/// dimA x dimB matrix from 2 dimA dimB reals when rank is 0.
class SearchParametrization {
public:
  SearchParametrization(Eigen::Index dimA, Eigen::Index dimB, int rank)
      : dimA_(dimA), dimB_(dimB), rank_(rank) {}

  Eigen::Index size() const {
    return rank_ == 0 ? 2 * dimA_ * dimB_ : 2 * rank_ * (dimA_ + dimB_);
  }

  ComplexMatrix matrix(const RealVector& t) const {
    if (rank_ == 0) return unpack(t, 0, dimA_, dimB_);
    const ComplexMatrix a = unpack(t, 0, dimA_, rank_);
    const ComplexMatrix b = unpack(t, 2 * dimA_ * rank_, dimB_, rank_);
    return a * b.transpose();
  }

  /// Parameters that reproduce amplitude matrix m (rank <= rank_ when rank_ > 0).
  RealVector pack(const ComplexMatrix& m) const {
    RealVector t(size());
    if (rank_ == 0) {
      store(m, t, 0);
      return t;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ComplexMatrix a = svd.matrixU().leftCols(rank_) *
                            svd.singularValues().head(rank_).cast<Complex>().asDiagonal();
    const ComplexMatrix b = svd.matrixV().leftCols(rank_).conjugate();
    store(a, t, 0);
    store(b, t, 2 * dimA_ * rank_);
    return t;
  }

private:
  static ComplexMatrix unpack(const RealVector& t, Eigen::Index off, Eigen::Index rows,
                              Eigen::Index cols) {
    const Eigen::Index n = rows * cols;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const Eigen::Index k = off + i * cols + j;
        m(i, j) = Complex(t(k), t(k + n));
      }
    }
    return m;
  }

  static void store(const ComplexMatrix& m, RealVector& t, Eigen::Index off) {
    const Eigen::Index n = m.rows() * m.cols();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Eigen::Index k = off + i * m.cols() + j;
        t(k) = m(i, j).real();
        t(k + n) = m(i, j).imag();
      }
    }
  }

  Eigen::Index dimA_;
  Eigen::Index dimB_;
  int rank_;
};

struct Candidate {
  double gap = 0.0;
  RealVector coefficients;
  ComplexMatrix amplitudes;
  bool feasible = false;
};

inline Candidate evaluateCandidate(const SearchProblem& p, const ComplexMatrix& raw, int floorCount,
                                   double nullFloor) {
  Candidate c;
  const double norm = raw.norm();
  if (!(norm > nullFloor) || !std::isfinite(norm)) return c;
  c.amplitudes = raw / norm;
  Eigen::JacobiSVD<ComplexMatrix> svd(c.amplitudes);
  c.coefficients = svd.singularValues();
  c.gap = evaluateTrace(p.x, p.y, c.amplitudes * c.amplitudes.adjoint()).gap(p.mode);
  c.feasible = c.coefficients.head(floorCount).minCoeff() >= p.minSchmidtCoeff - kFloorSlack;
  return c;
}

/// Lifts coefficients below delta up to delta and rescales the rest.
inline std::optional<ComplexMatrix> repairFloor(const ComplexMatrix& m, int floorCount, double delta) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealVector s = svd.singularValues();
  std::vector<bool> lifted(static_cast<std::size_t>(floorCount), false);
  double fixed = 0.0;
  double free = 0.0;
  for (int k = 0; k < floorCount; ++k) {
    if (s(k) < delta) {
      lifted[static_cast<std::size_t>(k)] = true;
      fixed += delta * delta;
    } else {
      free += s(k) * s(k);
    }
  }
  if (!(free > 0.0) || fixed >= 1.0) return std::nullopt;
  const double scale = std::sqrt((1.0 - fixed) / free);
  for (int k = 0; k < floorCount; ++k) {
    s(k) = lifted[static_cast<std::size_t>(k)] ? delta : s(k) * scale;
  }
  for (Eigen::Index k = floorCount; k < s.size(); ++k) s(k) = 0.0;
  const Eigen::Index r = s.size();
  return ComplexMatrix(svd.matrixU().leftCols(r) * s.cast<Complex>().asDiagonal() *
                       svd.matrixV().leftCols(r).adjoint());
}

inline SearchResult runSearch(const SearchProblem& p, int rank) {
  validate(p);
  const int full = static_cast<int>(std::min(p.dimA, p.dimB));
  const int floorCount = rank == 0 ? full : rank;
  const SearchParametrization param(p.dimA, p.dimB, rank);

  SearchResult res;
  res.rankTarget = rank;
  std::optional<Candidate> best;
  auto consider = [&](const Candidate& c) {
    if (c.feasible && (!best || c.gap < best->gap)) best = c;
  };

  Rng master(p.seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(p.restarts));
  for (auto& s : seeds) s = master();

  double weight = kInitialPenaltyWeight;
  for (int r = 0; r < p.restarts; ++r, weight *= 10.0) {
    Rng rng(seeds[static_cast<std::size_t>(r)]);
    const BipartiteState start = [&] {
      if (rank == 0) return randomEntangledState(p.dimA, p.dimB, p.minSchmidtCoeff, rng);
      const RealVector c = randomSchmidtCoefficients(rank, p.minSchmidtCoeff, rng);
      const ComplexMatrix ua = randomUnitary(p.dimA, rng);
      const ComplexMatrix ub = randomUnitary(p.dimB, rng);
      return BipartiteState::fromMatrix(ua.leftCols(rank) * c.cast<Complex>().asDiagonal() *
                                        ub.leftCols(rank).transpose());
    }();
    const RealVector t0 = param.pack(start.matrix());

    auto objective = [&](const RealVector& t) {
      const Candidate c = evaluateCandidate(p, param.matrix(t), floorCount, 1e-12);
      if (c.amplitudes.size() == 0) return std::numeric_limits<double>::max();
      consider(c);
      double penalty = 0.0;
      for (int k = 0; k < floorCount; ++k) {
        penalty += std::max(0.0, p.minSchmidtCoeff - c.coefficients(k));
      }
      return c.gap + weight * penalty;
    };

    SimplexOptions opt;
    opt.maxIters = p.maxIters;
    opt.initialStep = 0.1;
    SimplexResult sr = nelderMead(objective, t0, opt);
    res.iterations += sr.iterations;
    // Second pass from the converged point with a fresh simplex.
    opt.initialStep = 1e-3;
    sr = nelderMead(objective, sr.x, opt);
    res.iterations += sr.iterations;
    res.converged = res.converged || sr.converged;

    if (p.minSchmidtCoeff > 0.0) {
      if (const auto fixed = repairFloor(param.matrix(sr.x), floorCount, p.minSchmidtCoeff)) {
        consider(evaluateCandidate(p, *fixed, floorCount, 1e-12));
      }
    }
    res.restartBest.push_back(best ? best->gap : std::numeric_limits<double>::infinity());
  }

  if (!best) throw NoProgress("no restart reached a point satisfying the Schmidt floor");
  res.bestGap = best->gap;
  res.bestState = BipartiteState::fromMatrix(best->amplitudes);
  res.schmidtProfile = best->coefficients;
  res.witnessFound = res.bestGap < p.tolerance;
  return res;
}

} // namespace detail

/// Multi-restart search over full-rank amplitude matrices.
inline SearchResult minimizeGap(const SearchProblem& p) { return detail::runSearch(p, 0); }

/// Search restricted to amplitude matrices of rank <= s; the floor applies to
/// the s leading Schmidt coefficients.
inline SearchResult saturationHunt(const SearchProblem& p, int rankTarget) {
  if (rankTarget < 1 || rankTarget > std::min(p.dimA, p.dimB)) {
    throw DomainError("rank target must lie in [1, min(dimA, dimB)]");
  }
  return detail::runSearch(p, rankTarget);
}

} // namespace minunc
