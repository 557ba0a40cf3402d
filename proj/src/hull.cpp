// Projection onto the convex hull of a finite vertex set.
//
// Solved as the minimum-norm point of conv{v_j - y} with Wolfe's active-set
// method: each major step adds the vertex most aligned against the current
// point, each minor step solves the affine min-norm problem on the active set
// and backs off along the segment when a weight turns nonpositive. It
// terminates finitely, which gives near machine-precision projections that a
// first-order method on the weight simplex cannot reach in reasonable time.

#include "convexrelax/errors.hpp"
#include "convexrelax/geometry.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <stdexcept>

namespace convexrelax {
namespace {

constexpr double kWeightFloor = 1e-13;

// min || sum_i a_i P_i || subject to sum_i a_i = 1, over the active columns.
Vector affine_min_norm(const Matrix& active) {
  const Eigen::Index k = active.cols();
  Vector alpha(k);
  if (k == 1) {
    alpha[0] = 1.0;
    return alpha;
  }
  const Vector base = active.col(0);
  const Matrix d = active.rightCols(k - 1).colwise() - base;
  Eigen::ColPivHouseholderQR<Matrix> qr(d);
  const Vector beta = qr.solve(-base);
  alpha[0] = 1.0 - beta.sum();
  alpha.tail(k - 1) = beta;
  return alpha;
}

}  // namespace

HullProjection project_hull(const Matrix& vertices, const Vector& point, double tolerance,
                            int max_iterations) {
  const Eigen::Index nv = vertices.cols();
  if (nv < 1) throw std::invalid_argument("project_hull: no vertices");
  if (vertices.rows() != point.size()) {
    throw std::invalid_argument("project_hull: vertex dimension does not match point");
  }
  if (!point.allFinite()) throw std::invalid_argument("project_hull: non-finite input");

  const Matrix shifted = vertices.colwise() - point;
  const Eigen::RowVectorXd norms2 = shifted.colwise().squaredNorm();
  const double scale = std::max(norms2.maxCoeff(), 1e-300);

  std::vector<Eigen::Index> active;
  Eigen::Index first = 0;
  norms2.minCoeff(&first);
  active.push_back(first);
  Vector lambda = Vector::Ones(1);
  Vector x = shifted.col(first);

  auto active_columns = [&] {
    Matrix out(shifted.rows(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t i = 0; i < active.size(); ++i) {
      out.col(static_cast<Eigen::Index>(i)) = shifted.col(active[i]);
    }
    return out;
  };

  auto finish = [&](int iterations) {
    HullProjection result;
    result.weights = Vector::Zero(nv);
    for (std::size_t i = 0; i < active.size(); ++i) result.weights[active[i]] = lambda[i];
    result.point = vertices * result.weights;
    result.iterations = iterations;
    return result;
  };

  for (int iter = 1; iter <= max_iterations; ++iter) {
    const Vector dots = shifted.transpose() * x;
    Eigen::Index entering = 0;
    const double min_dot = dots.minCoeff(&entering);
    if (x.squaredNorm() - min_dot <= tolerance * scale) return finish(iter);
    if (std::find(active.begin(), active.end(), entering) != active.end()) {
      return finish(iter);  // no further descent available at this precision
    }
    active.push_back(entering);
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    for (int minor = 0; minor <= nv + 1; ++minor) {
      const Vector alpha = affine_min_norm(active_columns());
      if ((alpha.array() > kWeightFloor).all()) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= kWeightFloor) {
          const double denom = lambda[i] - alpha[i];
          if (denom > 0.0) theta = std::min(theta, lambda[i] / denom);
        }
      }
      lambda = (1.0 - theta) * lambda + theta * alpha;

      std::vector<Eigen::Index> kept;
      std::vector<double> kept_weights;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (lambda[static_cast<Eigen::Index>(i)] > kWeightFloor) {
          kept.push_back(active[i]);
          kept_weights.push_back(lambda[static_cast<Eigen::Index>(i)]);
        }
      }
      if (kept.empty()) {
        kept.push_back(entering);
        kept_weights.push_back(1.0);
      }
      active = std::move(kept);
      lambda = Eigen::Map<const Vector>(kept_weights.data(),
                                        static_cast<Eigen::Index>(kept_weights.size()));
      lambda /= lambda.sum();
    }
    x = active_columns() * lambda;
  }

  HullProjection last = finish(max_iterations);
  throw IterationBudgetExhausted("project_hull: iteration budget exhausted", last.point,
                                 x.squaredNorm() - (shifted.transpose() * x).minCoeff(),
                                 max_iterations);
}

HullProjection project_hull(const std::vector<Vector>& vertices, const Vector& point,
                            double tolerance, int max_iterations) {
  if (vertices.empty()) throw std::invalid_argument("project_hull: no vertices");
  Matrix cols(vertices.front().size(), static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (vertices[j].size() != cols.rows()) {
      throw std::invalid_argument("project_hull: vertices must share one dimension");
    }
    cols.col(static_cast<Eigen::Index>(j)) = vertices[j];
  }
  return project_hull(cols, point, tolerance, max_iterations);
}

}  // namespace convexrelax
