#include "convexrelax/cones.hpp"
#include "convexrelax/errors.hpp"
#include "convexrelax/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace convexrelax;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// ±(orthonormal basis of a random k-dim subspace of R^p).
std::vector<Vector> subspace_generators(int k, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix q = oracle::random_orthogonal(rng, p).leftCols(k);
  std::vector<Vector> gens;
  for (int j = 0; j < k; ++j) {
    gens.push_back(q.col(j));
    gens.push_back(-q.col(j));
  }
  return gens;
}

}  // namespace

TEST_CASE("one-generator cone") {
  const auto spec = TangentConeSpec::exact_vertex_cone(std::vector<Vector>{vec({1, 0})});
  CHECK(project_tangent_cone(spec, vec({-1, 1})).norm() < 1e-12);
  CHECK((project_tangent_cone(spec, vec({2, 1})) - vec({2, 0})).norm() < 1e-12);
}

TEST_CASE("orthant cone in the plane") {
  const auto spec =
      TangentConeSpec::exact_vertex_cone(std::vector<Vector>{vec({1, 0}), vec({0, 1})});
  CHECK((project_tangent_cone(spec, vec({2, -3})) - vec({2, 0})).norm() < 1e-12);
}

TEST_CASE("interior anchor of a huge ball gives the whole space") {
  std::mt19937_64 rng(1);
  const auto spec = TangentConeSpec::approx_via_body(ConvexBody::euclidean_ball(6, 1e6),
                                                     oracle::gaussian(rng, 6));
  const Vector d = oracle::gaussian(rng, 6);
  CHECK((project_tangent_cone(spec, d) - d).norm() < 1e-9);
}

TEST_CASE("infeasible anchors are rejected") {
  CHECK_THROWS_AS(TangentConeSpec::approx_via_body(ConvexBody::l1_ball(3, 1.0), vec({1, 1, 0})),
                  InfeasibleAnchor);
  CHECK_NOTHROW(TangentConeSpec::approx_via_body(ConvexBody::l1_ball(3, 1.0), vec({1, 0, 0})));
}

TEST_CASE("degenerate generator sets are rejected") {
  CHECK_THROWS_AS(TangentConeSpec::exact_vertex_cone(std::vector<Vector>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TangentConeSpec::exact_vertex_cone(std::vector<Vector>{vec({1, 0}), vec({1})}),
                  std::invalid_argument);
}

TEST_CASE("zero cone has zero complexity") {
  const auto spec = TangentConeSpec::exact_vertex_cone(std::vector<Vector>{Vector::Zero(5)});
  const ComplexityEstimate e = mc_squared_complexity(spec, 200, 3);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
  CHECK(e.draws == 200);
  CHECK(e.seed == 3);
}

TEST_CASE("subspace complexity equals its dimension") {
  const auto spec = TangentConeSpec::exact_vertex_cone(subspace_generators(5, 50, 9));
  const ComplexityEstimate e = mc_squared_complexity(spec, 2000, 17);
  CHECK(std::abs(e.mean - 5.0) <= 3.0 * e.std_error);
}

TEST_CASE("nnls: cone projection is optimal (Moreau)") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Vector> gens;
    for (int j = 0; j < 12; ++j) gens.push_back(oracle::gaussian(rng, 8));
    const auto spec = TangentConeSpec::exact_vertex_cone(gens);
    const Vector g = oracle::gaussian(rng, 8);
    const Vector proj = project_tangent_cone(spec, g);
    CHECK(proj.squaredNorm() <= g.squaredNorm() + 1e-12);
    CHECK(std::abs(proj.dot(g - proj)) < 1e-7);
    // The residual lies in the polar cone: nonpositive against every generator.
    for (const Vector& gen : gens) CHECK(gen.dot(g - proj) <= 1e-7);
  }
}

TEST_CASE("nnls recovers nonnegative coefficients in an overcomplete system") {
  Matrix g(3, 4);
  g << 1, 0, 0, 1,  //
      0, 1, 0, 1,   //
      0, 0, 1, 0;
  const Vector target = vec({2, 3, -1});
  const NnlsResult r = nonnegative_least_squares(g, target);
  CHECK(r.coefficients.minCoeff() >= 0.0);
  CHECK((r.fitted - vec({2, 3, 0})).norm() < 1e-10);
}

TEST_CASE("complexity is monotone under generator inclusion") {
  std::mt19937_64 rng(31);
  std::vector<Vector> small, big;
  for (int j = 0; j < 6; ++j) small.push_back(oracle::gaussian(rng, 10));
  big = small;
  for (int j = 0; j < 6; ++j) big.push_back(oracle::gaussian(rng, 10));
  const auto a = mc_squared_complexity(TangentConeSpec::exact_vertex_cone(small), 1000, 4);
  const auto b = mc_squared_complexity(TangentConeSpec::exact_vertex_cone(big), 1000, 4);
  CHECK(a.mean <= b.mean + 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("body-projection cone agrees with the exact vertex cone on a hull") {
  std::mt19937_64 rng(41);
  Matrix v(6, 9);
  for (int j = 0; j < 9; ++j) v.col(j) = oracle::gaussian(rng, 6);
  const ConvexBody hull = ConvexBody::vertex_hull(v);
  // Pick a vertex that is extreme: the one maximizing a random direction.
  const Vector c = oracle::gaussian(rng, 6);
  Eigen::Index vertex = 0;
  (v.transpose() * c).maxCoeff(&vertex);

  const auto exact = TangentConeSpec::at_hull_vertex(hull, vertex);
  const auto approx = TangentConeSpec::approx_via_body(hull, v.col(vertex), 1e-3);
  int agree = 0;
  const int draws = 200;
  for (int i = 0; i < draws; ++i) {
    const Vector g = oracle::gaussian(rng, 6);
    const double e = project_tangent_cone(exact, g).squaredNorm();
    const double a = project_tangent_cone(approx, g).squaredNorm();
    if (std::abs(e - a) <= 0.01 * std::max(e, 1e-12) || (e < 1e-12 && a < 1e-10)) ++agree;
  }
  CHECK(agree >= 0.95 * draws);
}

TEST_CASE("monte carlo estimate is reproducible and schedule independent") {
  const auto spec = TangentConeSpec::approx_via_body(ConvexBody::l1_ball(30, 3.0),
                                                     3.0 * Vector::Unit(30, 0));
  const ComplexityEstimate a = mc_squared_complexity(spec, 300, 99);
  const ComplexityEstimate b = mc_squared_complexity(spec, 300, 99);
  const ComplexityEstimate s = mc_squared_complexity_serial(spec, 300, 99);
  CHECK(a.mean == b.mean);
  CHECK(a.mean == s.mean);
  CHECK(a.std_error == s.std_error);
  const ComplexityEstimate other = mc_squared_complexity(spec, 300, 100);
  CHECK(other.mean != a.mean);
  CHECK_THROWS_AS(mc_squared_complexity(spec, 1, 0), std::invalid_argument);
}
