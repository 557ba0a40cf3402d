#include "convexrelax/bounds.hpp"

#include "convexrelax/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace convexrelax {
namespace {

// Upper end of the admissible polar-volume range, 1/(4e^2). The range is
// closed there so that it matches the vertex-count condition v >= 4e^2.
const double kMuUpper = 0.25 * std::exp(-2.0);

bool approx_le(double a, double b) { return a <= b * (1.0 + 1e-12); }

void check_mu(double mu, int p, const char* who) {
  const double lower = 0.25 * std::exp(-static_cast<double>(p) / 20.0);
  if (!(mu > lower) || !approx_le(mu, kMuUpper)) {
    throw BoundInapplicable(std::string(who) + ": mu=" + std::to_string(mu) +
                            " outside (exp(-p/20)/4, 1/(4e^2)] for p=" + std::to_string(p));
  }
}

}  // namespace

double l1_tangent_bound(int s, int p) {
  if (s < 1 || p < 1 || s > p) {
    throw BoundInapplicable("l1_tangent_bound: need 1 <= s <= p, got s=" + std::to_string(s) +
                            ", p=" + std::to_string(p));
  }
  const double sd = s;
  return 2.0 * sd * std::log(static_cast<double>(p) / sd) + 1.25 * sd;
}

double nuclear_tangent_bound(int r, int m1, int m2) {
  if (r < 1 || m1 < 1 || m2 < 1 || r > std::min(m1, m2)) {
    throw BoundInapplicable("nuclear_tangent_bound: need 1 <= r <= min(m1, m2)");
  }
  return 3.0 * r * (static_cast<double>(m1) + m2 - r);
}

double volume_complexity_bound(double mu, int p) {
  if (p < 12) throw BoundInapplicable("volume_complexity_bound: needs p >= 12");
  check_mu(mu, p, "volume_complexity_bound");
  return 20.0 * std::log(1.0 / (4.0 * mu));
}

double vertex_transitive_bound(double v, int p) {
  const double lower = 4.0 * std::exp(2.0);
  const double upper = 4.0 * std::exp(static_cast<double>(p) / 20.0);
  if (!(v >= lower * (1.0 - 1e-12)) || !approx_le(v, upper)) {
    throw BoundInapplicable("vertex_transitive_bound: v=" + std::to_string(v) +
                            " outside [4e^2, 4 exp(p/20)] for p=" + std::to_string(p));
  }
  return 20.0 * std::log(v / 4.0);
}

CapVolumeBounds cap_volume_bounds(int p, double h) {
  if (p < 1 || !(h >= 2.0 / std::sqrt(static_cast<double>(p)) * (1.0 - 1e-12)) || !(h <= 1.0)) {
    throw BoundInapplicable("cap_volume_bounds: need 2/sqrt(p) <= h <= 1");
  }
  const double tail = std::pow(1.0 - h * h, (p - 1) / 2.0);
  const double root_p = std::sqrt(static_cast<double>(p));
  return {tail / (10.0 * h * root_p), tail / (2.0 * h * root_p)};
}

double detail::cap_solid_angle_formula(double mu, int p) {
  return std::numbers::pi / 2.0 *
         (1.0 - std::sqrt(2.0 * std::log(1.0 / (4.0 * mu)) / (p - 1.0)));
}

double cap_solid_angle_lower_bound(double mu, int p) {
  if (p < 2) throw BoundInapplicable("cap_solid_angle_lower_bound: needs p >= 2");
  check_mu(mu, p, "cap_solid_angle_lower_bound");
  return detail::cap_solid_angle_formula(mu, p);
}

}  // namespace convexrelax
