#pragma once

namespace convexrelax {

// Closed-form bounds on Gaussian squared-complexity of tangent cones, and the
// spherical-cap estimates behind the volume bound. Each throws
// BoundInapplicable outside the parameter range where it is proved.

/// 2 s log(p/s) + 5s/4: tangent cone of the l1 ball at an s-sparse boundary point.
double l1_tangent_bound(int s, int p);

/// 3 r (m1 + m2 - r): tangent cone of the nuclear ball at a rank-r boundary point.
double nuclear_tangent_bound(int r, int m1, int m2);

/// 20 log(1/(4 mu)) for a cone whose polar has normalized volume mu.
/// Requires p >= 12 and exp(-p/20)/4 < mu <= 1/(4e^2).
double volume_complexity_bound(double mu, int p);

/// 20 log(v/4) at a vertex of a vertex-transitive polytope with v vertices.
/// Requires 4e^2 <= v <= 4 exp(p/20).
double vertex_transitive_bound(double v, int p);

struct CapVolumeBounds {
  double lower;
  double upper;
};

/// Bracket on the normalized volume of {a on S^{p-1} : a_1 >= h}, for
/// 2/sqrt(p) <= h <= 1.
CapVolumeBounds cap_volume_bounds(int p, double h);

/// Lower bound on the solid angle of a cap of normalized volume mu, for
/// exp(-p/20)/4 < mu <= 1/(4e^2).
double cap_solid_angle_lower_bound(double mu, int p);

namespace detail {
/// (pi/2)(1 - sqrt(2 log(1/(4 mu)) / (p-1))) without range checks.
double cap_solid_angle_formula(double mu, int p);
}  // namespace detail

}  // namespace convexrelax
