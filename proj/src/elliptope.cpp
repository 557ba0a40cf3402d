// Nearest correlation matrix by Dykstra's alternating projections between the
// PSD cone and the affine set {diag = 1}. Only the cone step needs a Dykstra
// correction because the affine step is a translated subspace projection.

#include "convexrelax/errors.hpp"
#include "convexrelax/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace convexrelax::detail {
namespace {

Matrix psd_part(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw DomainError("project_elliptope: eigendecomposition failed");
  }
  const Vector clamped = eig.eigenvalues().cwiseMax(0.0);
  const Matrix& q = eig.eigenvectors();
  Matrix out = q * clamped.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace

ProjectionResult project_elliptope(const Vector& flat, int side, const ProjectionOptions& options) {
  const Matrix a = as_matrix(flat, side, side);
  Matrix y = 0.5 * (a + a.transpose());
  y.diagonal().setOnes();
  Matrix correction = Matrix::Zero(side, side);
  const std::int64_t eigen_cost = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(side) * side, 1.5)));

  // Start from the symmetrized input with the diagonal reset; this is the
  // affine projection of the input, i.e. the first half-step of the scheme.
  double change = 0.0;
  for (int iter = 1; iter <= options.dykstra_max_iterations; ++iter) {
    const Matrix r = y - correction;
    const Matrix x = psd_part(r);
    correction = x - r;
    Matrix next = x;
    next.diagonal().setOnes();
    change = (next - y).norm();
    y = std::move(next);
    if (change <= options.dykstra_tolerance) {
      return {flatten(y), {eigen_cost * iter, iter}};
    }
  }
  throw IterationBudgetExhausted("project_elliptope: Dykstra iteration budget exhausted",
                                 flatten(y), change, options.dykstra_max_iterations);
}

}  // namespace convexrelax::detail
