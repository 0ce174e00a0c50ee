#include "twistlab/maps.hpp"

#include <cmath>
#include <numbers>

namespace twistlab::maps {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kAntidiagonalTol = 1e-13;

// exp(-2/sqrt(u)) rather than the steeper exp(-1/u): both are C-infinity
// with exact plateaus, but this one has markedly smaller third derivatives,
// which keeps finite-difference residuals of the cut-off maps inside the
// verification tolerances at the default step.
double bump(double u) {
    return u > 0.0 ? std::exp(-2.0 / std::sqrt(u)) : 0.0;
}
}  // namespace

double smoothstep_bump(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double g = bump(u);
    return g / (g + bump(1.0 - u));
}

RadialProfile::RadialProfile(double inner_value, double outer_value,
                             double inner_edge, double outer_edge)
    : inner_value_(inner_value), outer_value_(outer_value),
      inner_edge_(inner_edge), outer_edge_(outer_edge) {
    if (!(inner_edge < outer_edge)) {
        throw std::invalid_argument("RadialProfile: inner_edge must be < outer_edge");
    }
}

double RadialProfile::operator()(double t) const {
    if (t <= inner_edge_) return inner_value_;
    if (t >= outer_edge_) return outer_value_;
    const double u = (t - inner_edge_) / (outer_edge_ - inner_edge_);
    return inner_value_ + (outer_value_ - inner_value_) * smoothstep_bump(u);
}

double profile_r(double t) {
    static const RadialProfile r(-kPi, 0.0, 0.5, 1.0);
    return r(t);
}

ProductPoint rho(double angle, const ProductPoint& p) {
    const Vec3 axis = p.x.coords() + p.y.coords();
    if (axis.norm() < kAntidiagonalTol) {
        throw std::domain_error("rho: undefined on the antidiagonal (x = -y)");
    }
    if (angle == 0.0) {
        return p;
    }
    return {SpherePoint(geom::rotate(axis, angle, p.x.coords())),
            SpherePoint(geom::rotate(axis, angle, p.y.coords()))};
}

double mu(const ProductPoint& p) {
    return -(p.x.coords() + p.y.coords()).norm();
}

ProductPoint tau(const ProductPoint& p) {
    const double s = (p.x.coords() + p.y.coords()).norm();
    if (s <= 0.5) {
        return {p.y, p.x};
    }
    const double angle = profile_r(s);
    if (angle == 0.0) {
        return p;  // plateau region |x+y| >= 1: identity, bit-exact
    }
    return rho(angle, p);
}

ProductPoint tau_inv(const ProductPoint& p) {
    const double s = (p.x.coords() + p.y.coords()).norm();
    if (s <= 0.5) {
        return {p.y, p.x};
    }
    const double angle = -profile_r(s);
    if (angle == 0.0) {
        return p;
    }
    return rho(angle, p);
}

ProductPoint homotopy_h(double s, const ProductPoint& p) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("homotopy_h: s must lie in [0,1]");
    }
    const double t = (p.x.coords() + p.y.coords()).norm();
    if (t <= 0.5) {
        return p;
    }
    const double angle = 2.0 * s * (kPi + profile_r(t));
    if (angle == 0.0) {
        return p;
    }
    return rho(angle, p);
}

ProductPoint swap_iota(const ProductPoint& p) {
    return {p.y, p.x};
}

ProductPoint loop_lambda(double t, const ProductPoint& p) {
    const double angle = 2.0 * kPi * t;
    if (angle == 0.0) {
        return p;
    }
    return {SpherePoint(geom::rotate(p.y.coords(), angle, p.x.coords())), p.y};
}

}  // namespace twistlab::maps
