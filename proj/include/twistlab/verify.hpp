#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include <json.hpp>

#include "twistlab/compactify.hpp"
#include "twistlab/maps.hpp"
#include "twistlab/sampling.hpp"

// Numerical differential-geometry engine: central-difference differentials
// through retract-based charts, pullback residuals of symplectic forms,
// seeded sampling reports, the moment-map identity, and normal-bundle
// actions along the diagonal.
//
// Sign convention for the moment map: with the outward-normal area form and
// right-handed rotations, the generator X of the circle action rho satisfies
// iota_X omega = -d mu for mu = -|x+y|; hamiltonian_residual therefore checks
// |omega(p; v, X) - d mu(v)|. Flipping either orientation choice flips this
// convention; the sign-flip control in the tests pins it.

namespace twistlab::verify {

using geom::Mat2;
using geom::Mat4;
using geom::OrientedFrame;
using geom::ProductPoint;
using geom::ProductTangent;
using geom::SpherePoint;
using geom::Vec3;

using ProductMap = std::function<ProductPoint(const ProductPoint&)>;
using CotangentMap = std::function<compact::CotangentPoint(const compact::CotangentPoint&)>;

/// A 2x2 linear map together with its frame anchor: entries are expressed in
/// the oriented frame tangent_frame(base) at source and target.
struct LinearMap2x2 {
    Mat2 mat;
    double det = 0.0;
    SpherePoint base;

    LinearMap2x2(const Mat2& m, const SpherePoint& b) : mat(m), det(m.det()), base(b) {}
};

/// Structured outcome of one numerical check. pass == (max_residual <= tol).
struct VerificationReport {
    std::string name;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double fd_step = 0.0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tol = 0.0;
    bool pass = false;

    static VerificationReport make(std::string name, std::size_t samples,
                                   std::uint64_t seed, double fd_step,
                                   double max_residual, double mean_residual,
                                   double tol);

    /// Stable JSON shape; field names are part of the external interface:
    /// name, samples, seed, step, max_residual, mean_residual, tol, pass.
    nlohmann::ordered_json to_json() const;

    static std::string csv_header();
    std::string csv_row() const;
};

// ---------------------------------------------------------------------------
// Manifold adapters for the generic FD engine
// ---------------------------------------------------------------------------

/// S^2 x S^2 with the product form omega. Tangents are ambient pairs.
struct ProductManifold {
    using Point = ProductPoint;
    struct Tangent {
        Vec3 u, v;
    };

    std::array<Tangent, 4> frame(const Point& p) const;
    Point move(const Point& p, const std::array<double, 4>& c) const;
    std::array<double, 4> coords(const Point& ref, const Point& q) const;
    Point nudge(const Point& p, const Tangent& a, double t) const;
    Tangent tangentialize(const Point& at, const Tangent& raw) const;
    Tangent from_coords(const Point& p, const std::array<double, 4>& c) const;
    /// Dual-basis coordinates of a tangent (inverse of from_coords).
    std::array<double, 4> components(const Point& p, const Tangent& t) const;
    Tangent quotient(const Point& fwd, const Point& bwd, double step) const;
    double form(const Point& p, const Tangent& a, const Tangent& b) const;
    double dist(const Point& a, const Point& b) const { return geom::distance(a, b); }
    Point sample(const SampleStream& st, std::uint64_t i) const {
        return st.product_point(i);
    }
};

/// Interior of the disc bundle T with the canonical form eta. Sampled
/// covector norms are uniform in [norm_lo, norm_hi].
struct DiscBundleManifold {
    using Point = compact::CotangentPoint;
    using Tangent = compact::CotangentTangent;

    double norm_lo = 0.02;
    double norm_hi = 0.95;

    std::array<Tangent, 4> frame(const Point& q) const { return compact::cotangent_frame(q); }
    Point move(const Point& q, const std::array<double, 4>& c) const {
        return compact::cotangent_move(q, c);
    }
    std::array<double, 4> coords(const Point& ref, const Point& r) const {
        return compact::cotangent_coords(ref, r);
    }
    Point nudge(const Point& q, const Tangent& a, double t) const;
    Tangent tangentialize(const Point& at, const Tangent& raw) const;
    Tangent from_coords(const Point& q, const std::array<double, 4>& c) const;
    std::array<double, 4> components(const Point& q, const Tangent& t) const;
    Tangent quotient(const Point& fwd, const Point& bwd, double step) const;
    double form(const Point& /*q*/, const Tangent& a, const Tangent& b) const {
        return compact::eta_raw(a, b);
    }
    double dist(const Point& a, const Point& b) const { return compact::distance(a, b); }
    Point sample(const SampleStream& st, std::uint64_t i) const;
};

// ---------------------------------------------------------------------------
// Generic engine
// ---------------------------------------------------------------------------

/// Central-difference Jacobian of `map` at p, expressed in the chart frames
/// at p and at map(p). Second-order accurate in `step`.
template <class M, class F>
Mat4 differential_on(const M& man, F&& map, const typename M::Point& p, double step) {
    const typename M::Point image = map(p);
    Mat4 jac;
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> cp{}, cm{};
        cp[i] = step;
        cm[i] = -step;
        const auto fwd = man.coords(image, map(man.move(p, cp)));
        const auto bwd = man.coords(image, map(man.move(p, cm)));
        for (int r = 0; r < 4; ++r) {
            jac.m[r][i] = (fwd[r] - bwd[r]) / (2.0 * step);
        }
    }
    return jac;
}

/// Directional derivative of `map` at p along tangent a, returned as a
/// tangent at map(p).
template <class M, class F>
typename M::Tangent push_on(const M& man, F&& map, const typename M::Point& p,
                            const typename M::Tangent& a, double step) {
    const typename M::Point image = map(p);
    const typename M::Point fwd = map(man.nudge(p, a, step));
    const typename M::Point bwd = map(man.nudge(p, a, -step));
    return man.tangentialize(image, man.quotient(fwd, bwd, step));
}

/// |form(map(p); Dmap a, Dmap b) - form(p; a, b)|, with Dmap the
/// chart-and-frame differential. The chart maps invert each other exactly,
/// so the identity map reports a residual at roundoff level.
template <class M, class F>
double pullback_residual_on(const M& man, F&& map, const typename M::Point& p,
                            const typename M::Tangent& a, const typename M::Tangent& b,
                            double step) {
    const typename M::Point image = map(p);
    const Mat4 jac = differential_on(man, map, p, step);
    const auto da = man.from_coords(image, jac.apply(man.components(p, a)));
    const auto db = man.from_coords(image, jac.apply(man.components(p, b)));
    return std::abs(man.form(image, da, db) - man.form(p, a, b));
}

/// Max/mean pullback residual over seeded random points and random unit
/// tangent pairs. Deterministic for a fixed seed regardless of scheduling
/// (counter-based sampling).
template <class M, class F>
VerificationReport symplectic_report_on(const M& man, F&& map, std::string name,
                                        std::size_t n_samples, std::uint64_t seed,
                                        double step, double tol) {
    if (n_samples < 1) {
        throw std::invalid_argument("symplectic_report: need at least one sample");
    }
    const SampleStream st(seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const typename M::Point p = man.sample(st, i);
        const typename M::Point image = map(p);
        const Mat4 jac = differential_on(man, map, p, step);  // shared by both tangents
        const auto a = random_unit_tangent(man, st, p, i, 6);
        const auto b = random_unit_tangent(man, st, p, i, 10);
        const auto da = man.from_coords(image, jac.apply(man.components(p, a)));
        const auto db = man.from_coords(image, jac.apply(man.components(p, b)));
        const double r = std::abs(man.form(image, da, db) - man.form(p, a, b));
        worst = std::max(worst, r);
        sum += r;
    }
    return VerificationReport::make(std::move(name), n_samples, seed, step, worst,
                                    sum / double(n_samples), tol);
}

/// Unit tangent with frame coefficients drawn from four gaussians
/// (gaussian slots slot..slot+3) and normalized.
template <class M>
typename M::Tangent random_unit_tangent(const M& man, const SampleStream& st,
                                        const typename M::Point& p, std::uint64_t index,
                                        std::uint32_t slot) {
    std::array<double, 4> c{};
    double n2 = 0.0;
    for (;;) {
        n2 = 0.0;
        for (int k = 0; k < 4; ++k) {
            c[k] = st.gaussian(index, slot + k);
            n2 += c[k] * c[k];
        }
        if (n2 >= 1e-12) break;
        slot += 23;  // vanishing draw: fall through to fresh slots
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : c) x *= inv;
    return man.from_coords(p, c);
}

// ---------------------------------------------------------------------------
// Named product-manifold operations
// ---------------------------------------------------------------------------

Mat4 differential(const ProductMap& map, const ProductPoint& p, double step);

double pullback_residual(const ProductMap& map, const ProductPoint& p,
                         const ProductTangent& a, const ProductTangent& b, double step);

VerificationReport symplectic_report(const ProductMap& map, std::string name,
                                     std::size_t n_samples, std::uint64_t seed,
                                     double step, double tol);

/// Same report for a map of the disc bundle against eta.
VerificationReport symplectic_report_eta(const CotangentMap& map, std::string name,
                                         std::size_t n_samples, std::uint64_t seed,
                                         double step, double tol,
                                         double norm_lo = 0.02, double norm_hi = 0.95);

/// Moment-map identity residual at p: X = d/dt rho(t,p)|_0 by central
/// differences; returns max over chart frame vectors v of
/// |omega(p; v, X) - d mu(v)| (see the sign convention above).
/// Throws std::domain_error on the antidiagonal.
double hamiltonian_residual(const ProductPoint& p, double step);

/// Induced action of D(map) on the normal space of the diagonal at (x,x),
/// in the frame {(e, -e)} with (e1, e2) = tangent_frame(x). Requires map to
/// fix (x,x) within 1e-8 (std::invalid_argument otherwise). For maps fixing
/// the diagonal this Euclidean-complement projection coincides with the
/// quotient-bundle action.
LinearMap2x2 normal_action(const ProductMap& map, const SpherePoint& x, double step);

}  // namespace twistlab::verify
