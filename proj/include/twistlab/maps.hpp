#pragma once

#include "twistlab/geometry.hpp"

// The explicit maps on S^2 x S^2: the circle action rho about x+y, its moment
// map mu = -|x+y|, the smooth cutoff profile, the generalized Dehn twist tau
// built from them, the homotopy h_s joining the identity to tau^2, the factor
// swap iota, and the loop lambda_t rotating the first factor about the second.

namespace twistlab::maps {

using geom::ProductPoint;
using geom::SpherePoint;
using geom::Vec3;

/// Smooth scalar profile with exact plateaus:
/// value == inner_value on (-inf, inner_edge], == outer_value on [outer_edge, inf),
/// C-infinity in between via the bump-based smoothstep
///   B(u) = g(u) / (g(u) + g(1-u)),  g(u) = exp(-2/sqrt(u)) for u > 0.
/// The plateaus are taken by explicit branches, so they are bit-exact.
class RadialProfile {
public:
    RadialProfile(double inner_value, double outer_value,
                  double inner_edge, double outer_edge);

    double operator()(double t) const;

    double inner_value() const { return inner_value_; }
    double outer_value() const { return outer_value_; }
    double inner_edge() const { return inner_edge_; }
    double outer_edge() const { return outer_edge_; }

private:
    double inner_value_, outer_value_, inner_edge_, outer_edge_;
};

/// The C-infinity smoothstep underlying RadialProfile: 0 for u <= 0, 1 for
/// u >= 1, strictly increasing in between, symmetric: B(u) + B(1-u) = 1.
double smoothstep_bump(double u);

/// The twist cutoff r: -pi below 1/2, 0 above 1, smooth and nondecreasing
/// in between. Satisfies the mirror identity r(t) = -pi - r(3/2 - t).
double profile_r(double t);

/// Circle action rho(t)(x,y): both factors rotated about x+y by angle t.
/// Undefined on the antidiagonal (x = -y): throws std::domain_error there.
ProductPoint rho(double angle, const ProductPoint& p);

/// Moment map mu(x,y) = -|x+y|, with range [-2, 0].
double mu(const ProductPoint& p);

/// Generalized Dehn twist:
///   tau(x,y) = (y,x)                      for |x+y| <= 1/2,
///   tau(x,y) = rho(r(|x+y|))(x,y)         otherwise.
/// Smooth across the seam since r == -pi near 1/2 and rho(-pi) is the swap.
/// Equals the identity bit-exactly on {|x+y| >= 1}.
ProductPoint tau(const ProductPoint& p);

/// Inverse twist: swap on |x+y| <= 1/2, rho(-r(|x+y|)) otherwise.
ProductPoint tau_inv(const ProductPoint& p);

/// Homotopy from the identity (s=0) to tau^2 (s=1):
///   h_s(x,y) = (x,y)                              for |x+y| <= 1/2,
///   h_s(x,y) = rho(2s(pi + r(|x+y|)))(x,y)        otherwise.
/// Throws std::domain_error for s outside [0,1].
ProductPoint homotopy_h(double s, const ProductPoint& p);

/// The involution interchanging the two factors.
ProductPoint swap_iota(const ProductPoint& p);

/// Loop lambda_t(x,y) = (rotate x about y by 2*pi*t, y). lambda_0 = lambda_1 = id;
/// fixes the diagonal pointwise. Its normal action on the diagonal winds once
/// (by +1 under this project's orientation conventions).
ProductPoint loop_lambda(double t, const ProductPoint& p);

}  // namespace twistlab::maps
