#include "convexrelax/cones.hpp"

#include "convexrelax/errors.hpp"
#include "convexrelax/parallel.hpp"
#include "convexrelax/rng.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>
#include <string>

namespace convexrelax {

// ── Spec construction ───────────────────────────────────────────────

TangentConeSpec TangentConeSpec::approx_via_body(ConvexBody body, Vector anchor, double step) {
  if (anchor.size() != body.ambient_dim()) {
    throw std::invalid_argument("tangent cone anchor dimension does not match body");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("tangent cone step must be positive");
  }
  const double gap = infeasibility(body, anchor);
  if (gap > 1e-7) {
    throw InfeasibleAnchor("tangent cone anchor is infeasible for body '" +
                           std::string(body.kind()) + "' (violation " + std::to_string(gap) +
                           ")");
  }
  const int dim = body.ambient_dim();
  return {BodyTangentCone{std::move(body), std::move(anchor), step}, dim};
}

TangentConeSpec TangentConeSpec::exact_vertex_cone(Matrix generators) {
  if (generators.cols() < 1 || generators.rows() < 1) {
    throw std::invalid_argument("vertex cone needs at least one generator");
  }
  if (!generators.allFinite()) throw std::invalid_argument("vertex cone generators must be finite");
  const int dim = static_cast<int>(generators.rows());
  return {VertexCone{std::move(generators)}, dim};
}

TangentConeSpec TangentConeSpec::exact_vertex_cone(const std::vector<Vector>& generators) {
  if (generators.empty()) throw std::invalid_argument("vertex cone needs at least one generator");
  Matrix cols(generators.front().size(), static_cast<Eigen::Index>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].size() != cols.rows()) {
      throw std::invalid_argument("vertex cone generators must share one dimension");
    }
    cols.col(static_cast<Eigen::Index>(j)) = generators[j];
  }
  return exact_vertex_cone(std::move(cols));
}

TangentConeSpec TangentConeSpec::at_hull_vertex(const ConvexBody& hull, Eigen::Index vertex) {
  const auto* h = hull.get_if<VertexHull>();
  if (h == nullptr) throw std::invalid_argument("at_hull_vertex: body is not a VertexHull");
  const Matrix& v = *h->vertices;
  if (vertex < 0 || vertex >= v.cols()) throw std::out_of_range("at_hull_vertex: bad vertex index");
  if (v.cols() == 1) return exact_vertex_cone(Matrix::Zero(v.rows(), 1));
  Matrix gens(v.rows(), v.cols() - 1);
  for (Eigen::Index j = 0, out = 0; j < v.cols(); ++j) {
    if (j != vertex) gens.col(out++) = v.col(j) - v.col(vertex);
  }
  return exact_vertex_cone(std::move(gens));
}

// ── NNLS ────────────────────────────────────────────────────────────

NnlsResult nonnegative_least_squares(const Matrix& g, const Vector& target, double tolerance,
                                     int max_iterations) {
  if (g.rows() != target.size()) {
    throw std::invalid_argument("nonnegative_least_squares: dimension mismatch");
  }
  const Eigen::Index n = g.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);

  const Vector col_norms = g.colwise().norm().transpose();
  const double scale = std::max(target.norm(), 1e-300);
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);

  auto solve_passive = [&](Vector& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Matrix sub(g.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = g.col(idx[k]);
    const Vector coef = Eigen::ColPivHouseholderQR<Matrix>(sub).solve(target);
    s = Vector::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = coef[static_cast<Eigen::Index>(k)];
  };

  Vector residual = target;
  int iterations = 0;
  while (true) {
    const Vector w = g.transpose() * residual;
    Eigen::Index entering = -1;
    double best = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)] || col_norms[j] == 0.0) continue;
      const double score = w[j] / col_norms[j];
      if (score > tolerance * scale && score > best) {
        best = score;
        entering = j;
      }
    }
    if (entering < 0) break;
    if (++iterations > max_iterations) {
      throw IterationBudgetExhausted("nonnegative_least_squares: iteration budget exhausted",
                                     g * x, best, iterations - 1);
    }
    passive[static_cast<std::size_t>(entering)] = true;

    Vector s;
    for (Eigen::Index inner = 0; inner <= n; ++inner) {
      solve_passive(s);
      bool all_positive = true;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!passive[static_cast<std::size_t>(j)] || s[j] > 0.0) continue;
        all_positive = false;
        const double denom = x[j] - s[j];
        if (denom > 0.0) alpha = std::min(alpha, x[j] / denom);
      }
      if (all_positive) break;
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= 1e-15 * std::max(1.0, x.maxCoeff())) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      x[j] = passive[static_cast<std::size_t>(j)] ? std::max(s[j], 0.0) : 0.0;
    }
    residual = target - g * x;
  }
  return {x, g * x, iterations};
}

// ── Cone projection ─────────────────────────────────────────────────

Vector project_tangent_cone(const TangentConeSpec& spec, const Vector& direction) {
  if (direction.size() != spec.ambient_dim()) {
    throw std::invalid_argument("project_tangent_cone: dimension mismatch");
  }
  if (!direction.allFinite()) throw std::invalid_argument("project_tangent_cone: non-finite input");
  if (const auto* cone = std::get_if<VertexCone>(&spec.mode())) {
    return nonnegative_least_squares(cone->generators, direction).fitted;
  }
  const auto& approx = std::get<BodyTangentCone>(spec.mode());
  const double norm = direction.norm();
  if (norm == 0.0) return Vector::Zero(direction.size());
  const double t = approx.step * std::max(1.0, approx.anchor.norm()) / norm;
  const Vector moved = project(approx.body, approx.anchor + t * direction);
  return (moved - approx.anchor) / t;
}

// ── Monte-Carlo squared complexity ──────────────────────────────────

namespace {

double squared_complexity_draw(const TangentConeSpec& spec, std::int64_t seed, std::int64_t i) {
  Engine engine = make_engine(static_cast<std::uint64_t>(seed), Stream::cone_draw,
                              static_cast<std::uint64_t>(i));
  const Vector g = standard_normal(engine, spec.ambient_dim());
  return project_tangent_cone(spec, g).squaredNorm();
}

void check_draws(int draws) {
  if (draws < 2) throw std::invalid_argument("mc_squared_complexity: draws must be >= 2");
}

ComplexityEstimate finish(const std::vector<double>& values, int draws, std::int64_t seed) {
  const SampleSummary s = summarize(values);
  return {s.mean, s.std_error, draws, seed};
}

}  // namespace

ComplexityEstimate mc_squared_complexity(const TangentConeSpec& spec, int draws,
                                         std::int64_t seed) {
  check_draws(draws);
  std::vector<double> values(static_cast<std::size_t>(draws));
  parallel_for(draws, [&](std::int64_t i) {
    values[static_cast<std::size_t>(i)] = squared_complexity_draw(spec, seed, i);
  });
  return finish(values, draws, seed);
}

ComplexityEstimate mc_squared_complexity_serial(const TangentConeSpec& spec, int draws,
                                                std::int64_t seed) {
  check_draws(draws);
  std::vector<double> values(static_cast<std::size_t>(draws));
  serial_for(draws, [&](std::int64_t i) {
    values[static_cast<std::size_t>(i)] = squared_complexity_draw(spec, seed, i);
  });
  return finish(values, draws, seed);
}

}  // namespace convexrelax
