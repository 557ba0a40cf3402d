#pragma once

// Slow, independent reference implementations used only by the tests. None of
// these call into the library's projectors.

#include "convexrelax/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using convexrelax::Matrix;
using convexrelax::Vector;

inline Vector gaussian(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = n(rng);
  return v;
}

/// Uniform point on the probability simplex (normalized exponentials).
inline Vector dirichlet(std::mt19937_64& rng, Eigen::Index dim) {
  std::exponential_distribution<double> e(1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = e(rng);
  return v / v.sum();
}

// ── Hull projection by exhaustive active-set enumeration ────────────
//
// The projection onto conv(V) is the affine min-norm point of some vertex
// subset with positive weights. Every subset is tried; the KKT system is solved
// by full-pivot LU. Exact up to round-off, exponential in the vertex count.

struct HullOracle {
  Vector point;
  Vector weights;
  double distance2;
};

inline HullOracle hull_by_subsets(const Matrix& v, const Vector& y) {
  const int k = static_cast<int>(v.cols());
  HullOracle best{Vector(), Vector(), std::numeric_limits<double>::infinity()};
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> idx;
    for (int j = 0; j < k; ++j) {
      if (mask & (1u << j)) idx.push_back(j);
    }
    const int s = static_cast<int>(idx.size());
    Matrix sub(v.rows(), s);
    for (int j = 0; j < s; ++j) sub.col(j) = v.col(idx[static_cast<std::size_t>(j)]);
    // [2 S^T S  1; 1^T 0] [w; nu] = [2 S^T y; 1]
    Matrix kkt = Matrix::Zero(s + 1, s + 1);
    kkt.topLeftCorner(s, s) = 2.0 * sub.transpose() * sub;
    kkt.topRightCorner(s, 1).setOnes();
    kkt.bottomLeftCorner(1, s).setOnes();
    Vector rhs(s + 1);
    rhs.head(s) = 2.0 * sub.transpose() * y;
    rhs[s] = 1.0;
    Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Vector sol = lu.solve(rhs);
    const Vector w = sol.head(s);
    if (w.minCoeff() < -1e-12) continue;
    const Vector x = sub * w;
    const double d2 = (y - x).squaredNorm();
    if (d2 < best.distance2) {
      best.distance2 = d2;
      best.point = x;
      best.weights = Vector::Zero(k);
      for (int j = 0; j < s; ++j) best.weights[idx[static_cast<std::size_t>(j)]] = w[j];
    }
  }
  return best;
}

// ── Grid search over the simplex of weights ─────────────────────────
//
// Exhaustive search over the lattice {w >= 0, sum w = 1, w in step*Z} at a
// coarse step, then a lattice descent that moves mass between pairs of
// weights at successively finer steps down to `resolution`. For a convex
// objective a point that no pairwise transfer improves is optimal, so the
// descent converges to the true minimizer as the step shrinks.

inline double hull_objective(const Matrix& v, const Vector& y, const Vector& w) {
  return (y - v * w).squaredNorm();
}

inline void enumerate_lattice(int k, int units, std::vector<int>& current,
                              const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(current.size()) == k - 1) {
    current.push_back(units);
    visit(current);
    current.pop_back();
    return;
  }
  for (int u = 0; u <= units; ++u) {
    current.push_back(u);
    enumerate_lattice(k, units - u, current, visit);
    current.pop_back();
  }
}

inline Vector grid_search_simplex(const Matrix& v, const Vector& y, double resolution = 1e-3,
                                  int coarse_units = 8) {
  const int k = static_cast<int>(v.cols());
  Vector best = Vector::Constant(k, 1.0 / k);
  double best_f = hull_objective(v, y, best);
  std::vector<int> current;
  enumerate_lattice(k, coarse_units, current, [&](const std::vector<int>& units) {
    Vector w(k);
    for (int j = 0; j < k; ++j) w[j] = static_cast<double>(units[static_cast<std::size_t>(j)]) / coarse_units;
    const double f = hull_objective(v, y, w);
    if (f < best_f) {
      best_f = f;
      best = w;
    }
  });
  for (double step = 0.5 / coarse_units; step >= resolution * 0.999; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a == b) continue;
          const double move = std::min(step, best[a]);
          if (move <= 0.0) continue;
          Vector w = best;
          w[a] -= move;
          w[b] += move;
          const double f = hull_objective(v, y, w);
          if (f < best_f - 1e-18) {
            best_f = f;
            best = w;
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

// ── Combinatorial counts ────────────────────────────────────────────

/// Number of distinct perfect matchings on m nodes, by pairing consecutive
/// entries of every permutation and deduplicating the resulting edge sets.
inline std::size_t count_perfect_matchings(int m) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<std::pair<int, int>>> seen;
  do {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < perm.size(); i += 2) {
      edges.emplace_back(std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1]));
    }
    std::sort(edges.begin(), edges.end());
    seen.insert(edges);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return seen.size();
}

// ── Spherical caps ──────────────────────────────────────────────────

/// Fraction of uniform points on S^{p-1} with first coordinate >= h.
inline double cap_fraction(int p, double h, std::int64_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < draws; ++i) {
    double first = n(rng);
    double norm2 = first * first;
    for (int j = 1; j < p; ++j) {
      const double z = n(rng);
      norm2 += z * z;
    }
    if (first >= h * std::sqrt(norm2)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

// ── Feasible points and membership, per body ────────────────────────

inline Matrix random_orthogonal(std::mt19937_64& rng, int n) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian(rng, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// A feasible point of `body`, drawn from a mixture of interior and boundary
/// constructions.
inline Vector feasible_point(const convexrelax::ConvexBody& body, std::mt19937_64& rng) {
  using namespace convexrelax;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int p = body.ambient_dim();
  const bool boundary = u(rng) < 0.5;
  const double shrink = boundary ? 1.0 : u(rng);

  if (const auto* b = body.get_if<EuclideanBall>()) {
    const Vector d = gaussian(rng, p);
    return b->radius * shrink * d / d.norm();
  }
  if (const auto* b = body.get_if<L1Ball>()) {
    Vector w = dirichlet(rng, p);
    for (int i = 0; i < p; ++i) {
      if (u(rng) < 0.5) w[i] = -w[i];
    }
    return b->radius * shrink * w;
  }
  if (body.get_if<Simplex>() != nullptr) return dirichlet(rng, p);
  if (const auto* b = body.get_if<Hypersimplex>()) {
    // Mixture of a few random k-subsets of coordinates.
    const int parts = 1 + static_cast<int>(u(rng) * 4);
    const Vector mix = dirichlet(rng, parts);
    Vector x = Vector::Zero(p);
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int t = 0; t < parts; ++t) {
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int i = 0; i < b->k; ++i) x[idx[static_cast<std::size_t>(i)]] += mix[t] * b->scale;
    }
    return x;
  }
  if (const auto* b = body.get_if<NuclearBall>()) {
    const int r = std::min(b->rows, b->cols);
    const Vector s = b->radius * shrink * dirichlet(rng, r);
    const Matrix uu = random_orthogonal(rng, b->rows).leftCols(r);
    const Matrix vv = random_orthogonal(rng, b->cols).leftCols(r);
    return flatten(uu * s.asDiagonal() * vv.transpose());
  }
  if (const auto* b = body.get_if<Elliptope>()) {
    // Gram matrix of random unit vectors of random rank.
    const int n = b->side;
    const int rank = 1 + static_cast<int>(u(rng) * n);
    Matrix f(n, rank);
    for (int i = 0; i < n; ++i) {
      const Vector row = gaussian(rng, rank);
      f.row(i) = row.transpose() / row.norm();
    }
    return flatten(f * f.transpose());
  }
  if (const auto* b = body.get_if<VertexHull>()) {
    const Matrix& v = *b->vertices;
    const int parts = 1 + static_cast<int>(u(rng) * std::min<Eigen::Index>(4, v.cols()));
    const Vector mix = dirichlet(rng, parts);
    std::uniform_int_distribution<Eigen::Index> pick(0, v.cols() - 1);
    Vector x = Vector::Zero(v.rows());
    for (int t = 0; t < parts; ++t) x += mix[t] * v.col(pick(rng));
    return x;
  }
  return Vector::Zero(p);
}

/// Constraint violation computed from first principles (different
/// factorizations than the library uses).
inline double violation(const convexrelax::ConvexBody& body, const Vector& x) {
  using namespace convexrelax;
  if (const auto* b = body.get_if<EuclideanBall>()) return std::max(0.0, x.norm() - b->radius);
  if (const auto* b = body.get_if<L1Ball>()) return std::max(0.0, x.lpNorm<1>() - b->radius);
  if (body.get_if<Simplex>() != nullptr) {
    return std::max(std::abs(x.sum() - 1.0), std::max(0.0, -x.minCoeff()));
  }
  if (const auto* b = body.get_if<Hypersimplex>()) {
    return std::max({std::abs(x.sum() - b->k * b->scale), std::max(0.0, -x.minCoeff()),
                     std::max(0.0, x.maxCoeff() - b->scale)});
  }
  if (const auto* b = body.get_if<NuclearBall>()) {
    const Matrix m = as_matrix(x, b->rows, b->cols);
    Eigen::BDCSVD<Matrix> svd(m);
    return std::max(0.0, svd.singularValues().sum() - b->radius);
  }
  if (const auto* b = body.get_if<Elliptope>()) {
    const Matrix m = as_matrix(x, b->side, b->side);
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    const double diag = (m.diagonal().array() - 1.0).abs().maxCoeff();
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::EigenSolver<Matrix> es(sym, false);
    const double lmin = es.eigenvalues().real().minCoeff();
    return std::max({asym, diag, std::max(0.0, -lmin)});
  }
  if (const auto* b = body.get_if<VertexHull>()) {
    return std::sqrt(hull_by_subsets(*b->vertices, x).distance2);
  }
  return 0.0;
}

/// A random input of the right size, scaled so that roughly half land
/// outside the body.
inline Vector random_input(const convexrelax::ConvexBody& body, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int p = body.ambient_dim();
  const double scale = 0.1 + 2.0 * u(rng);
  Vector y = scale * gaussian(rng, p);
  if (const auto* b = body.get_if<convexrelax::Hypersimplex>()) {
    y.array() += b->scale * b->k / static_cast<double>(p);
  }
  if (const auto* b = body.get_if<convexrelax::Elliptope>()) {
    y += convexrelax::flatten(Matrix::Identity(b->side, b->side));
  }
  return y;
}

}  // namespace oracle
