#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "twistlab/maps.hpp"

// Identification of the interior of the unit-disc bundle T in T*S^2 with the
// complement of the diagonal in S^2 x S^2, symplectic up to a global scale.
//
// T*S^2 is handled in the embedded model
//     { (u, p) in R^3 x R^3 : |u| = 1, <u, p> = 0 },
// tangents are pairs (du, dp) with <u, du> = 0 and <u, dp> + <du, p> = 0, and
// the canonical form is eta = d(lambda_can) with lambda_can(du, dp) = <p, du>,
// i.e. eta(a, b) = <a.dp, b.du> - <b.dp, a.du>. Under this sign convention
// eta((e,0), (0,e)) = -1 at a zero-section point, and the identification
// below pulls eta back to +c * omega with c > 0.
//
// The identification:
//     phi(x, y) = ( b, s f(s) * chat ),   b = (x-y)/|x-y|,  s = |x+y|,
//     chat = (x cross y)/|x cross y|  (the covector is computed in the
//     equivalent smooth form f(s) * 2 (x cross y)/|x-y|).
// The scalar profile f is produced by solve-time ODE reduction on the SO(3)
// symmetry slice: writing g(s) = s f(s) for the covector norm, the pullback
// condition phi*eta = c*omega reduces to g'(s) = g(s)/s with g(2) = 1. The
// profile is tabulated and verified afterwards by an independent random
// pullback oracle that never touches the ODE.

namespace twistlab::compact {

using geom::ProductPoint;
using geom::SpherePoint;
using geom::Vec3;

inline constexpr double kCovectorTangentTol = 1e-10;

/// Interior point of the unit-disc bundle: base on S^2, covector orthogonal
/// to it with |covector| < 1.
class CotangentPoint {
public:
    CotangentPoint(const SpherePoint& base, const Vec3& covector);

    const SpherePoint& base() const { return base_; }
    const Vec3& covector() const { return covector_; }

private:
    SpherePoint base_;
    Vec3 covector_;
};

/// Tangent of T*S^2 in the embedded model: (du, dp).
struct CotangentTangent {
    Vec3 du;
    Vec3 dp;
};

/// Canonical symplectic form eta at q, with tangency of a and b checked
/// against q (throws std::domain_error on non-tangent inputs).
double eta(const CotangentPoint& q, const CotangentTangent& a, const CotangentTangent& b);

/// Unchecked kernel: constant-coefficient ambient expression of eta.
inline double eta_raw(const CotangentTangent& a, const CotangentTangent& b) {
    return a.dp.dot(b.du) - b.dp.dot(a.du);
}

/// Max exterior-derivative residual of eta over the chart 3-frames at q,
/// computed by nested central differences. Should vanish to FD accuracy.
double eta_closedness_residual(const CotangentPoint& q, double step = 1e-3);

/// Tabulated compactification profile f(s) on s in [0, 2], with monotone
/// cubic (Fritsch-Carlson) interpolation. Invariants, enforced at build:
/// f > 0, s*f(s) strictly increasing, s*f(s) -> 1 as s -> 2.
class CompactifyProfile {
public:
    /// Integrates the reduction ODE g' = g/s backwards from g(2) = 1 (RK4 on
    /// the grid), tabulates f = g/s, fits interpolation slopes, and validates
    /// the invariants. Throws std::runtime_error with a diagnostic if the ODE
    /// residual or any invariant check fails.
    static CompactifyProfile solve(std::size_t nodes = 4096);

    double f(double s) const;
    double df(double s) const;

    /// The covector-norm map g(s) = s * f(s).
    double norm_map(double s) const { return s * f(s); }

    /// Inverse of the norm map on [0, 2]: bisection on the table, polished by
    /// Newton steps. Accepts nu in [0, 1).
    double invert_norm(double nu) const;

    std::size_t size() const { return s_.size(); }
    double node(std::size_t i) const { return s_[i]; }
    double value(std::size_t i) const { return f_[i]; }

    /// CSV export: '#'-prefixed header with build parameters, then "s,f" rows,
    /// doubles printed with round-trip precision. Reimport is bit-faithful.
    void write_csv(std::ostream& out) const;
    static CompactifyProfile read_csv(std::istream& in);

private:
    CompactifyProfile() = default;
    void fit_slopes();
    void validate() const;

    std::vector<double> s_, f_, d_;  // nodes, values, interpolation slopes
};

/// The process-wide profile table (built once, immutable afterwards).
const CompactifyProfile& profile_f();

/// The identification map: complement of the diagonal -> interior of T.
/// phi(x, -x) = (x, 0); |covector| = s*f(s) < 1. Throws std::domain_error on
/// the diagonal.
CotangentPoint phi(const ProductPoint& p);

/// Inverse identification: (u, 0) -> (u, -u); throws only via CotangentPoint
/// construction (|covector| < 1 is part of the type).
ProductPoint phi_inv(const CotangentPoint& q);

/// The twist conjugated to the disc bundle: phi o tau o phi_inv. Identity on
/// the region |covector| >= s*f(s)|_{s=1}, antipodal on the zero section.
CotangentPoint conjugated_twist(const CotangentPoint& q);

/// Oriented chart frame at q: four tangents
///   (e1, -u<e1,p>), (e2, -u<e2,p>), (0, e1), (0, e2)
/// with (e1, e2) = tangent_frame(base).
std::array<CotangentTangent, 4> cotangent_frame(const CotangentPoint& q);

/// Chart around q: base moved by retract, covector translated and projected
/// back to the moved base's orthogonal plane. Exactly q at c = 0.
CotangentPoint cotangent_move(const CotangentPoint& q, const std::array<double, 4>& c);

/// Local coordinates of r near ref, dual to cotangent_frame at ref.
std::array<double, 4> cotangent_coords(const CotangentPoint& ref, const CotangentPoint& r);

inline double distance(const CotangentPoint& a, const CotangentPoint& b) {
    return std::max(geom::distance(a.base(), b.base()),
                    (a.covector() - b.covector()).norm());
}

}  // namespace twistlab::compact
