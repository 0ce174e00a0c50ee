#pragma once

#include <stdexcept>

#include "twistlab/vec.hpp"

// Exact-formula geometry of the unit sphere S^2, its rotations, and the
// symplectic (area) forms on S^2 and on the product S^2 x S^2.
//
// Orientation conventions, fixed once for the whole project:
//   - outward normal on S^2; the area form is sigma_x(u,v) = <x, u x v>,
//     total area 4*pi;
//   - rotations follow the right-hand rule about the axis;
//   - oriented frames satisfy <x, e1 x e2> = +1 with e2 = x x e1.
// Every degree and winding sign downstream is pinned to these choices.

namespace twistlab::geom {

inline constexpr double kUnitTol = 1e-12;     // |coords| = 1 after construction
inline constexpr double kTangentTol = 1e-10;  // <vec, base> = 0 for tangent vectors
inline constexpr double kBaseMatchTol = 1e-9; // base-point agreement in form evaluations

/// A point of S^2: a unit vector in R^3, renormalized on construction.
class SpherePoint {
public:
    explicit SpherePoint(const Vec3& v);

    const Vec3& coords() const { return c_; }
    SpherePoint antipode() const { return SpherePoint(-c_); }

private:
    Vec3 c_;
};

/// A tangent vector attached to a base point; <vec, base> = 0 is enforced.
class TangentVector {
public:
    TangentVector(const SpherePoint& base, const Vec3& vec);

    /// Builds a tangent by projecting out the normal component of `vec`.
    /// Used by finite-difference code whose raw quotients carry O(h^2) drift.
    static TangentVector projected(const SpherePoint& base, const Vec3& vec);

    const SpherePoint& base() const { return base_; }
    const Vec3& vec() const { return vec_; }

private:
    TangentVector(const SpherePoint& base, const Vec3& vec, int /*unchecked*/)
        : base_(base), vec_(vec) {}
    SpherePoint base_;
    Vec3 vec_;
};

/// A point of S^2 x S^2.
struct ProductPoint {
    SpherePoint x;
    SpherePoint y;
};

/// A tangent vector of S^2 x S^2: one tangent per factor.
struct ProductTangent {
    TangentVector u;  // at the owning point's x
    TangentVector v;  // at the owning point's y
};

/// Oriented orthonormal frame (e1, e2) at a common base, <base, e1 x e2> > 0.
class OrientedFrame {
public:
    OrientedFrame(const TangentVector& e1, const TangentVector& e2);

    const TangentVector& e1() const { return e1_; }
    const TangentVector& e2() const { return e2_; }

private:
    TangentVector e1_, e2_;
};

/// Rodrigues rotation of v about axis/|axis| by `angle` (right-hand rule).
/// Throws std::domain_error on a zero axis. rotate(a, 0, v) returns v exactly.
Vec3 rotate(const Vec3& axis, double angle, const Vec3& v);

/// Area form sigma_x(u, v) = <x, u x v>. Bases of u, v must match x.
double area_form(const SpherePoint& x, const TangentVector& u, const TangentVector& v);

/// Unchecked kernel of the area form; callers guarantee tangency.
inline double area_form_raw(const Vec3& x, const Vec3& u, const Vec3& v) {
    return x.dot(u.cross(v));
}

/// Product symplectic form omega = sigma (+) sigma on S^2 x S^2.
double omega(const ProductPoint& p, const ProductTangent& a, const ProductTangent& b);

/// Unchecked kernel of omega on ambient pairs (au, av), (bu, bv).
inline double omega_raw(const ProductPoint& p, const Vec3& au, const Vec3& av,
                        const Vec3& bu, const Vec3& bv) {
    return area_form_raw(p.x.coords(), au, bu) + area_form_raw(p.y.coords(), av, bv);
}

/// Chart retraction: normalize(x + w) for w tangent at x. First-order
/// agreement with the exponential map; retract(x, 0) = x.
SpherePoint retract(const SpherePoint& x, const Vec3& w);

/// Exact inverse of retract: returns w with retract(x, w) = q, given q in the
/// open hemisphere around x. w = q/<q,x> - x.
Vec3 retract_inverse(const SpherePoint& x, const SpherePoint& q);

/// Deterministic oriented orthonormal frame at x.
///
/// Rule: take the coordinate axis a with the smallest |<a, x>| (lowest index
/// wins ties), project it to the tangent plane and normalize for e1, then
/// e2 = x x e1. The frame is continuous except where the two smallest
/// coordinate magnitudes of x tie — a measure-zero union of great-circle
/// arcs. Frames are chart scaffolding only; no equivariance under rotations
/// is promised.
OrientedFrame tangent_frame(const SpherePoint& x);

inline double distance(const SpherePoint& a, const SpherePoint& b) {
    return (a.coords() - b.coords()).norm();
}
inline double distance(const ProductPoint& a, const ProductPoint& b) {
    return std::max(distance(a.x, b.x), distance(a.y, b.y));
}

}  // namespace twistlab::geom
