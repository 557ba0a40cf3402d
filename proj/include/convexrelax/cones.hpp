#pragma once

#include "convexrelax/geometry.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace convexrelax {

/// Tangent cone of `body` at `anchor`, projected through the directional
/// derivative of the body projector:
///   Pi_T(d) ~ (Pi_C(anchor + t d) - anchor) / t,  t = step * max(1, |anchor|) / |d|.
/// Exact for polyhedral bodies once t is small enough; first-order biased for
/// curved ones.
struct BodyTangentCone {
  ConvexBody body;
  Vector anchor;
  double step;
};

/// cone{g_1, ..., g_k}; generators are the columns.
struct VertexCone {
  Matrix generators;
};

class TangentConeSpec {
 public:
  using Mode = std::variant<BodyTangentCone, VertexCone>;

  /// Throws InfeasibleAnchor when the anchor is more than 1e-7 outside body.
  static TangentConeSpec approx_via_body(ConvexBody body, Vector anchor, double step = 1e-3);
  static TangentConeSpec exact_vertex_cone(Matrix generators_as_columns);
  static TangentConeSpec exact_vertex_cone(const std::vector<Vector>& generators);
  /// Exact cone of a VertexHull at one of its vertices: generators v_j - v_i.
  static TangentConeSpec at_hull_vertex(const ConvexBody& hull, Eigen::Index vertex);

  const Mode& mode() const noexcept { return mode_; }
  int ambient_dim() const noexcept { return ambient_dim_; }

 private:
  TangentConeSpec(Mode mode, int dim) : mode_(std::move(mode)), ambient_dim_(dim) {}

  Mode mode_;
  int ambient_dim_;
};

struct NnlsResult {
  Vector coefficients;
  Vector fitted;  // generators * coefficients
  int iterations = 0;
};

/// min |target - G c| subject to c >= 0 (Lawson-Hanson active set). Stops when
/// every inactive column satisfies <g_j, residual> <= tolerance*|g_j|*|target|.
NnlsResult nonnegative_least_squares(const Matrix& generators, const Vector& target,
                                     double tolerance = 1e-9, int max_iterations = 0);

Vector project_tangent_cone(const TangentConeSpec& spec, const Vector& direction);

struct ComplexityEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int draws = 0;
  std::int64_t seed = 0;
};

/// Monte-Carlo estimate of the Gaussian squared-complexity of T ∩ B as
/// E|Pi_T(g)|^2, which equals E dist(g, T°)^2 by the Moreau split. Draw i uses
/// its own substream of (seed, i); the OpenMP and serial versions return
/// bit-identical results.
ComplexityEstimate mc_squared_complexity(const TangentConeSpec& spec, int draws = 2000,
                                         std::int64_t seed = 0);
ComplexityEstimate mc_squared_complexity_serial(const TangentConeSpec& spec, int draws = 2000,
                                                std::int64_t seed = 0);

}  // namespace convexrelax
