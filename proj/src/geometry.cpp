#include "twistlab/geometry.hpp"

#include <cmath>

namespace twistlab::geom {

SpherePoint::SpherePoint(const Vec3& v) : c_(v) {
    const double n2 = v.norm2();
    if (!std::isfinite(n2) || n2 == 0.0) {
        throw std::domain_error("SpherePoint: zero or non-finite coordinates");
    }
    // Skip the division when already unit to machine precision; keeps maps
    // with exact plateau branches bit-exact through reconstruction and makes
    // antipodes exact negations. Drift never accumulates past 1e-14, far
    // inside the 1e-12 invariant.
    if (std::abs(n2 - 1.0) > 1e-14) {
        c_ = c_ / std::sqrt(n2);
    }
}

TangentVector::TangentVector(const SpherePoint& base, const Vec3& vec)
    : base_(base), vec_(vec) {
    if (std::abs(vec_.dot(base_.coords())) > kTangentTol * std::max(1.0, vec_.norm())) {
        throw std::domain_error("TangentVector: not orthogonal to base point");
    }
}

TangentVector TangentVector::projected(const SpherePoint& base, const Vec3& vec) {
    const Vec3& x = base.coords();
    return TangentVector(base, vec - x * vec.dot(x), 0);
}

OrientedFrame::OrientedFrame(const TangentVector& e1, const TangentVector& e2)
    : e1_(e1), e2_(e2) {
    if (distance(e1.base(), e2.base()) > kBaseMatchTol) {
        throw std::domain_error("OrientedFrame: mismatched base points");
    }
    const Vec3& a = e1.vec();
    const Vec3& b = e2.vec();
    if (std::abs(a.norm2() - 1.0) > kTangentTol || std::abs(b.norm2() - 1.0) > kTangentTol ||
        std::abs(a.dot(b)) > kTangentTol) {
        throw std::domain_error("OrientedFrame: not orthonormal");
    }
    if (e1.base().coords().dot(a.cross(b)) <= 0.0) {
        throw std::domain_error("OrientedFrame: negatively oriented");
    }
}

Vec3 rotate(const Vec3& axis, double angle, const Vec3& v) {
    const double an2 = axis.norm2();
    if (!(an2 > 0.0)) {
        throw std::domain_error("rotate: zero axis");
    }
    if (angle == 0.0) {
        return v;  // exact: keeps plateau regions of cut-off maps bit-exact
    }
    const Vec3 k = axis / std::sqrt(an2);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c));
}

double area_form(const SpherePoint& x, const TangentVector& u, const TangentVector& v) {
    if (distance(u.base(), x) > kBaseMatchTol || distance(v.base(), x) > kBaseMatchTol) {
        throw std::domain_error("area_form: tangent base points do not match x");
    }
    return area_form_raw(x.coords(), u.vec(), v.vec());
}

double omega(const ProductPoint& p, const ProductTangent& a, const ProductTangent& b) {
    if (distance(a.u.base(), p.x) > kBaseMatchTol || distance(b.u.base(), p.x) > kBaseMatchTol ||
        distance(a.v.base(), p.y) > kBaseMatchTol || distance(b.v.base(), p.y) > kBaseMatchTol) {
        throw std::domain_error("omega: tangent base points do not match p");
    }
    return omega_raw(p, a.u.vec(), a.v.vec(), b.u.vec(), b.v.vec());
}

SpherePoint retract(const SpherePoint& x, const Vec3& w) {
    if (w.norm2() == 0.0) {
        return x;
    }
    return SpherePoint(x.coords() + w);
}

Vec3 retract_inverse(const SpherePoint& x, const SpherePoint& q) {
    const double d = q.coords().dot(x.coords());
    if (d < 0.1) {
        throw std::domain_error("retract_inverse: point outside chart hemisphere");
    }
    return q.coords() / d - x.coords();
}

OrientedFrame tangent_frame(const SpherePoint& x) {
    const Vec3& c = x.coords();
    const double ax = std::abs(c.x), ay = std::abs(c.y), az = std::abs(c.z);
    Vec3 a(1.0, 0.0, 0.0);
    if (ay < ax && ay <= az) {
        a = Vec3(0.0, 1.0, 0.0);
    } else if (az < ax && az < ay) {
        a = Vec3(0.0, 0.0, 1.0);
    }
    Vec3 e1 = a - c * a.dot(c);
    e1 = e1 / e1.norm();
    const Vec3 e2 = c.cross(e1);
    return OrientedFrame(TangentVector(x, e1), TangentVector(x, e2));
}

}  // namespace twistlab::geom
