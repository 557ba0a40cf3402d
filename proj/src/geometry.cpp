#include "convexrelax/geometry.hpp"

#include "convexrelax/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace convexrelax {
namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void require_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("ambient dimension must be >= 1");
}

std::int64_t sort_cost(Eigen::Index p) {
  const double n = static_cast<double>(p);
  return static_cast<std::int64_t>(std::ceil(n * std::log2(std::max(n, 2.0))));
}

std::int64_t factorization_cost(Eigen::Index p) {
  return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(p), 1.5)));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Eigen::Map<const RowMajorMatrix> as_matrix(const Vector& flat, Eigen::Index rows,
                                           Eigen::Index cols) {
  if (flat.size() != rows * cols) {
    throw std::invalid_argument("as_matrix: size " + std::to_string(flat.size()) +
                                " does not match shape " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  return {flat.data(), rows, cols};
}

Vector flatten(const Matrix& m) {
  RowMajorMatrix rm = m;
  return Eigen::Map<const Vector>(rm.data(), rm.size());
}

// ── ConvexBody factories ────────────────────────────────────────────

ConvexBody ConvexBody::euclidean_ball(int dim, double radius) {
  require_dim(dim);
  require_positive(radius, "EuclideanBall radius");
  return {EuclideanBall{radius}, dim};
}

ConvexBody ConvexBody::l1_ball(int dim, double radius) {
  require_dim(dim);
  require_positive(radius, "L1Ball radius");
  return {L1Ball{radius}, dim};
}

ConvexBody ConvexBody::simplex(int dim) {
  require_dim(dim);
  return {Simplex{}, dim};
}

ConvexBody ConvexBody::hypersimplex(int dim, int k, double scale) {
  require_dim(dim);
  require_positive(scale, "Hypersimplex scale");
  if (k < 1 || k > dim) {
    throw std::invalid_argument("Hypersimplex k must satisfy 1 <= k <= dim, got k=" +
                                std::to_string(k) + ", dim=" + std::to_string(dim));
  }
  return {Hypersimplex{k, scale}, dim};
}

ConvexBody ConvexBody::nuclear_ball(int rows, int cols, double radius) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("NuclearBall shape must be positive");
  require_positive(radius, "NuclearBall radius");
  return {NuclearBall{rows, cols, radius}, rows * cols};
}

ConvexBody ConvexBody::elliptope(int side) {
  if (side < 1) throw std::invalid_argument("Elliptope side must be >= 1");
  return {Elliptope{side}, side * side};
}

ConvexBody ConvexBody::vertex_hull(const std::vector<Vector>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("VertexHull needs at least one vertex");
  const Eigen::Index dim = vertices.front().size();
  Matrix cols(dim, static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (vertices[j].size() != dim) {
      throw std::invalid_argument("VertexHull vertices must share one dimension");
    }
    cols.col(static_cast<Eigen::Index>(j)) = vertices[j];
  }
  return vertex_hull(std::move(cols));
}

ConvexBody ConvexBody::vertex_hull(Matrix vertices_as_columns) {
  if (vertices_as_columns.cols() < 1 || vertices_as_columns.rows() < 1) {
    throw std::invalid_argument("VertexHull needs at least one vertex of positive dimension");
  }
  if (!vertices_as_columns.allFinite()) {
    throw std::invalid_argument("VertexHull vertices must be finite");
  }
  const int dim = static_cast<int>(vertices_as_columns.rows());
  return {VertexHull{std::make_shared<const Matrix>(std::move(vertices_as_columns))}, dim};
}

std::string_view ConvexBody::kind() const noexcept {
  return std::visit(overloaded{
                        [](const EuclideanBall&) { return std::string_view("euclidean_ball"); },
                        [](const L1Ball&) { return std::string_view("l1_ball"); },
                        [](const Simplex&) { return std::string_view("simplex"); },
                        [](const Hypersimplex&) { return std::string_view("hypersimplex"); },
                        [](const NuclearBall&) { return std::string_view("nuclear_ball"); },
                        [](const Elliptope&) { return std::string_view("elliptope"); },
                        [](const VertexHull&) { return std::string_view("vertex_hull"); },
                    },
                    variant_);
}

// ── Sort-based projectors ───────────────────────────────────────────

namespace detail {

Vector project_simplex_sum(const Vector& y, double total) {
  const Eigen::Index n = y.size();
  if (n == 0) throw std::invalid_argument("project_simplex_sum: empty vector");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return y[a] > y[b]; });

  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += y[order[static_cast<std::size_t>(j)]];
    const double candidate = (cumsum - total) / static_cast<double>(j + 1);
    if (y[order[static_cast<std::size_t>(j)]] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).cwiseMax(0.0).matrix();
}

Vector project_l1_ball(const Vector& y, double radius) {
  if (y.lpNorm<1>() <= radius) return y;
  const Vector magnitude = project_simplex_sum(y.cwiseAbs(), radius);
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    out[i] = y[i] < 0.0 ? -magnitude[i] : magnitude[i];
  }
  return out;
}

Vector project_hypersimplex(const Vector& y, int k, double scale, double multiplier_tolerance) {
  const Eigen::Index n = y.size();
  const double target = static_cast<double>(k) * scale;
  if (k == n) return Vector::Constant(n, scale);

  auto clamped_sum = [&](double theta) {
    return (y.array() - theta).cwiseMax(0.0).cwiseMin(scale).sum();
  };

  // clamped_sum is nonincreasing in theta: n*scale at lo, 0 at hi.
  double lo = y.minCoeff() - scale;
  double hi = y.maxCoeff();
  while (hi - lo > multiplier_tolerance * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (clamped_sum(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double theta = 0.5 * (lo + hi);

  // With the active sets fixed by bisection, the multiplier solves a linear
  // equation; solving it exactly pins the sum to k*scale to rounding.
  int free_count = 0;
  int upper_count = 0;
  double free_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double shifted = y[i] - theta;
    if (shifted >= scale) {
      ++upper_count;
    } else if (shifted > 0.0) {
      ++free_count;
      free_sum += y[i];
    }
  }
  if (free_count > 0) {
    theta = (free_sum + upper_count * scale - target) / free_count;
  }
  return (y.array() - theta).cwiseMax(0.0).cwiseMin(scale).matrix();
}

ProjectionResult project_nuclear_ball(const Vector& flat, int rows, int cols, double radius) {
  const Matrix a = as_matrix(flat, rows, cols);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector sigma = svd.singularValues();
  ProjectionStats stats{factorization_cost(flat.size()), 1};
  if (sigma.sum() <= radius) return {flat, stats};
  const Vector shrunk = project_l1_ball(sigma, radius);
  const Matrix out = svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
  return {flatten(out), stats};
}

}  // namespace detail

Vector project_psd_cone(const Vector& flat_square, int side) {
  if (side < 1 || flat_square.size() != static_cast<Eigen::Index>(side) * side) {
    throw std::invalid_argument("project_psd_cone: input is not a flattened square matrix");
  }
  if (!flat_square.allFinite()) {
    throw std::invalid_argument("project_psd_cone: non-finite input");
  }
  const Matrix a = as_matrix(flat_square, side, side);
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw DomainError("project_psd_cone: eigendecomposition failed");
  }
  const Vector clamped = eig.eigenvalues().cwiseMax(0.0);
  const Matrix q = eig.eigenvectors();
  Matrix out = q * clamped.asDiagonal() * q.transpose();
  out = 0.5 * (out + out.transpose()).eval();
  return flatten(out);
}

// ── Dispatch ────────────────────────────────────────────────────────

ProjectionResult project_with_stats(const ConvexBody& body, const Vector& point,
                                    const ProjectionOptions& options) {
  if (point.size() != body.ambient_dim()) {
    throw std::invalid_argument("project: point has dimension " + std::to_string(point.size()) +
                                " but body '" + std::string(body.kind()) + "' has dimension " +
                                std::to_string(body.ambient_dim()));
  }
  if (!point.allFinite()) throw std::invalid_argument("project: non-finite input");

  const Eigen::Index p = point.size();
  return std::visit(
      overloaded{
          [&](const EuclideanBall& b) -> ProjectionResult {
            const double norm = point.norm();
            Vector out = norm <= b.radius ? point : Vector(point * (b.radius / norm));
            return {std::move(out), {static_cast<std::int64_t>(p), 1}};
          },
          [&](const L1Ball& b) -> ProjectionResult {
            return {detail::project_l1_ball(point, b.radius), {sort_cost(p), 1}};
          },
          [&](const Simplex&) -> ProjectionResult {
            return {detail::project_simplex_sum(point, 1.0), {sort_cost(p), 1}};
          },
          [&](const Hypersimplex& b) -> ProjectionResult {
            return {detail::project_hypersimplex(point, b.k, b.scale,
                                                 options.hypersimplex_multiplier_tolerance),
                    {sort_cost(p), 1}};
          },
          [&](const NuclearBall& b) -> ProjectionResult {
            return detail::project_nuclear_ball(point, b.rows, b.cols, b.radius);
          },
          [&](const Elliptope& b) -> ProjectionResult {
            return detail::project_elliptope(point, b.side, options);
          },
          [&](const VertexHull& b) -> ProjectionResult {
            HullProjection h = project_hull(*b.vertices, point, options.hull_tolerance,
                                            options.hull_max_iterations);
            const std::int64_t per_iter = static_cast<std::int64_t>(b.vertices->cols()) * p;
            return {std::move(h.point), {per_iter * std::max(1, h.iterations), h.iterations}};
          },
      },
      body.variant());
}

Vector project(const ConvexBody& body, const Vector& point, const ProjectionOptions& options) {
  return project_with_stats(body, point, options).point;
}

// ── Feasibility ─────────────────────────────────────────────────────

double infeasibility(const ConvexBody& body, const Vector& x) {
  if (x.size() != body.ambient_dim()) {
    throw std::invalid_argument("infeasibility: dimension mismatch");
  }
  if (!x.allFinite()) return std::numeric_limits<double>::infinity();
  return std::visit(
      overloaded{
          [&](const EuclideanBall& b) { return std::max(0.0, x.norm() - b.radius); },
          [&](const L1Ball& b) { return std::max(0.0, x.lpNorm<1>() - b.radius); },
          [&](const Simplex&) {
            return std::max(std::abs(x.sum() - 1.0), std::max(0.0, -x.minCoeff()));
          },
          [&](const Hypersimplex& b) {
            const double sum_gap = std::abs(x.sum() - b.k * b.scale);
            const double bound_gap =
                std::max({0.0, -x.minCoeff(), x.maxCoeff() - b.scale});
            return std::max(sum_gap, bound_gap);
          },
          [&](const NuclearBall& b) {
            const Matrix a = as_matrix(x, b.rows, b.cols);
            Eigen::JacobiSVD<Matrix> svd(a);
            return std::max(0.0, svd.singularValues().sum() - b.radius);
          },
          [&](const Elliptope& b) {
            const Matrix a = as_matrix(x, b.side, b.side);
            const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
            const double diag = (a.diagonal().array() - 1.0).abs().maxCoeff();
            Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.transpose()),
                                                      Eigen::EigenvaluesOnly);
            const double neg = std::max(0.0, -eig.eigenvalues().minCoeff());
            return std::max({asym, diag, neg});
          },
          [&](const VertexHull& b) { return (project_hull(*b.vertices, x).point - x).norm(); },
      },
      body.variant());
}

bool contains(const ConvexBody& body, const Vector& x, double tolerance) {
  return infeasibility(body, x) <= tolerance;
}

}  // namespace convexrelax
