#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

namespace convexrelax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Matrix-shaped sets are handled as flattened row-major vectors; the body
// descriptor carries the shape.
Eigen::Map<const RowMajorMatrix> as_matrix(const Vector& flat, Eigen::Index rows,
                                           Eigen::Index cols);
Vector flatten(const Matrix& m);

// ── Convex set descriptors ──────────────────────────────────────────

struct EuclideanBall {
  double radius;
};

struct L1Ball {
  double radius;
};

/// Probability simplex {x >= 0, sum x = 1}.
struct Simplex {};

/// {0 <= x <= scale, sum x = k * scale}: the hypersimplex conv{0/1 vectors
/// with k ones} scaled by `scale`.
struct Hypersimplex {
  int k;
  double scale;
};

struct NuclearBall {
  int rows;
  int cols;
  double radius;
};

/// Correlation matrices: symmetric PSD with unit diagonal.
struct Elliptope {
  int side;
};

/// conv(vertices); vertices are the columns of the matrix.
struct VertexHull {
  std::shared_ptr<const Matrix> vertices;
};

class ConvexBody {
 public:
  using Variant =
      std::variant<EuclideanBall, L1Ball, Simplex, Hypersimplex, NuclearBall, Elliptope, VertexHull>;

  static ConvexBody euclidean_ball(int dim, double radius);
  static ConvexBody l1_ball(int dim, double radius);
  static ConvexBody simplex(int dim);
  static ConvexBody hypersimplex(int dim, int k, double scale = 1.0);
  static ConvexBody nuclear_ball(int rows, int cols, double radius);
  static ConvexBody elliptope(int side);
  static ConvexBody vertex_hull(const std::vector<Vector>& vertices);
  static ConvexBody vertex_hull(Matrix vertices_as_columns);

  const Variant& variant() const noexcept { return variant_; }
  int ambient_dim() const noexcept { return ambient_dim_; }
  /// Snake-case variant name, as used in JSON descriptors.
  std::string_view kind() const noexcept;

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&variant_);
  }

 private:
  ConvexBody(Variant v, int dim) : variant_(std::move(v)), ambient_dim_(dim) {}

  Variant variant_;
  int ambient_dim_;
};

// ── Projection ──────────────────────────────────────────────────────

struct ProjectionOptions {
  double dykstra_tolerance = 1e-12;
  int dykstra_max_iterations = 10'000;
  double hull_tolerance = 1e-14;
  int hull_max_iterations = 10'000;
  double hypersimplex_multiplier_tolerance = 1e-12;
};

/// Declared work of one projection under the cost model used in the tradeoff
/// tables: p*log2(p) for sorting projectors, p^1.5 per eigen/SVD
/// factorization, vertices*p per hull iteration.
struct ProjectionStats {
  std::int64_t work_units = 0;
  int iterations = 0;
};

struct ProjectionResult {
  Vector point;
  ProjectionStats stats;
};

/// Euclidean projection onto `body`. Throws std::invalid_argument on a
/// dimension mismatch or non-finite input, IterationBudgetExhausted when an
/// iterative projector runs out of iterations.
Vector project(const ConvexBody& body, const Vector& point,
               const ProjectionOptions& options = {});
ProjectionResult project_with_stats(const ConvexBody& body, const Vector& point,
                                    const ProjectionOptions& options = {});

/// Nearest PSD matrix to (A + A^T)/2, for a flattened square A.
Vector project_psd_cone(const Vector& flat_square, int side);

struct HullProjection {
  Vector point;
  Vector weights;  // on the simplex, one per vertex
  int iterations = 0;
};

/// arg min over conv(vertices) of the distance to `point`.
HullProjection project_hull(const Matrix& vertices_as_columns, const Vector& point,
                            double tolerance = 1e-14, int max_iterations = 10'000);
HullProjection project_hull(const std::vector<Vector>& vertices, const Vector& point,
                            double tolerance = 1e-14, int max_iterations = 10'000);

/// Nonnegative violation of the constraints of `body` at `x` (0 when x is
/// feasible). Scale matches the constraint being violated.
double infeasibility(const ConvexBody& body, const Vector& x);
bool contains(const ConvexBody& body, const Vector& x, double tolerance = 1e-7);

// Building blocks shared by several projectors.
namespace detail {

/// Projects onto {x >= 0, sum x = total}; ties in the sort are broken by
/// ascending index.
Vector project_simplex_sum(const Vector& y, double total);
Vector project_l1_ball(const Vector& y, double radius);
Vector project_hypersimplex(const Vector& y, int k, double scale, double multiplier_tolerance);
ProjectionResult project_elliptope(const Vector& flat, int side, const ProjectionOptions& options);
ProjectionResult project_nuclear_ball(const Vector& flat, int rows, int cols, double radius);

}  // namespace detail

}  // namespace convexrelax
