#include "twistlab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace twistlab::verify {

VerificationReport VerificationReport::make(std::string name, std::size_t samples,
                                            std::uint64_t seed, double fd_step,
                                            double max_residual, double mean_residual,
                                            double tol) {
    VerificationReport r;
    r.name = std::move(name);
    r.samples = samples;
    r.seed = seed;
    r.fd_step = fd_step;
    r.max_residual = max_residual;
    r.mean_residual = mean_residual;
    r.tol = tol;
    r.pass = max_residual <= tol;
    return r;
}

nlohmann::ordered_json VerificationReport::to_json() const {
    return nlohmann::ordered_json{{"name", name},
                                  {"samples", samples},
                                  {"seed", seed},
                                  {"step", fd_step},
                                  {"max_residual", max_residual},
                                  {"mean_residual", mean_residual},
                                  {"tol", tol},
                                  {"pass", pass}};
}

std::string VerificationReport::csv_header() {
    return "name,samples,seed,step,max_residual,mean_residual,tol,pass";
}

std::string VerificationReport::csv_row() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%zu,%llu,%.17g,%.17g,%.17g,%.17g,%d",
                  name.c_str(), samples, static_cast<unsigned long long>(seed),
                  fd_step, max_residual, mean_residual, tol, pass ? 1 : 0);
    return buf;
}

// ---------------------------------------------------------------------------
// ProductManifold
// ---------------------------------------------------------------------------

std::array<ProductManifold::Tangent, 4> ProductManifold::frame(const Point& p) const {
    const OrientedFrame fx = geom::tangent_frame(p.x);
    const OrientedFrame fy = geom::tangent_frame(p.y);
    return {Tangent{fx.e1().vec(), Vec3{}}, Tangent{fx.e2().vec(), Vec3{}},
            Tangent{Vec3{}, fy.e1().vec()}, Tangent{Vec3{}, fy.e2().vec()}};
}

ProductManifold::Point ProductManifold::move(const Point& p,
                                             const std::array<double, 4>& c) const {
    const OrientedFrame fx = geom::tangent_frame(p.x);
    const OrientedFrame fy = geom::tangent_frame(p.y);
    return {geom::retract(p.x, fx.e1().vec() * c[0] + fx.e2().vec() * c[1]),
            geom::retract(p.y, fy.e1().vec() * c[2] + fy.e2().vec() * c[3])};
}

std::array<double, 4> ProductManifold::coords(const Point& ref, const Point& q) const {
    const OrientedFrame fx = geom::tangent_frame(ref.x);
    const OrientedFrame fy = geom::tangent_frame(ref.y);
    const Vec3 wx = geom::retract_inverse(ref.x, q.x);
    const Vec3 wy = geom::retract_inverse(ref.y, q.y);
    return {wx.dot(fx.e1().vec()), wx.dot(fx.e2().vec()),
            wy.dot(fy.e1().vec()), wy.dot(fy.e2().vec())};
}

ProductManifold::Point ProductManifold::nudge(const Point& p, const Tangent& a,
                                              double t) const {
    return {geom::retract(p.x, a.u * t), geom::retract(p.y, a.v * t)};
}

ProductManifold::Tangent ProductManifold::tangentialize(const Point& at,
                                                        const Tangent& raw) const {
    const Vec3& x = at.x.coords();
    const Vec3& y = at.y.coords();
    return {raw.u - x * raw.u.dot(x), raw.v - y * raw.v.dot(y)};
}

ProductManifold::Tangent ProductManifold::from_coords(const Point& p,
                                                      const std::array<double, 4>& c) const {
    const auto fr = frame(p);
    return {fr[0].u * c[0] + fr[1].u * c[1], fr[2].v * c[2] + fr[3].v * c[3]};
}

std::array<double, 4> ProductManifold::components(const Point& p, const Tangent& t) const {
    const OrientedFrame fx = geom::tangent_frame(p.x);
    const OrientedFrame fy = geom::tangent_frame(p.y);
    return {t.u.dot(fx.e1().vec()), t.u.dot(fx.e2().vec()),
            t.v.dot(fy.e1().vec()), t.v.dot(fy.e2().vec())};
}

ProductManifold::Tangent ProductManifold::quotient(const Point& fwd, const Point& bwd,
                                                   double step) const {
    return {(fwd.x.coords() - bwd.x.coords()) / (2.0 * step),
            (fwd.y.coords() - bwd.y.coords()) / (2.0 * step)};
}

double ProductManifold::form(const Point& p, const Tangent& a, const Tangent& b) const {
    return geom::omega_raw(p, a.u, a.v, b.u, b.v);
}

// ---------------------------------------------------------------------------
// DiscBundleManifold
// ---------------------------------------------------------------------------

DiscBundleManifold::Point DiscBundleManifold::nudge(const Point& q, const Tangent& a,
                                                    double t) const {
    const SpherePoint moved = geom::retract(q.base(), a.du * t);
    const Vec3 shifted = q.covector() + a.dp * t;
    const Vec3& m = moved.coords();
    return Point(moved, shifted - m * shifted.dot(m));
}

DiscBundleManifold::Tangent DiscBundleManifold::tangentialize(const Point& at,
                                                              const Tangent& raw) const {
    const Vec3& u = at.base().coords();
    const Vec3& p = at.covector();
    const Vec3 du = raw.du - u * raw.du.dot(u);
    const Vec3 dp = raw.dp - u * (raw.dp.dot(u) + du.dot(p));
    return {du, dp};
}

DiscBundleManifold::Tangent DiscBundleManifold::from_coords(
    const Point& q, const std::array<double, 4>& c) const {
    const auto fr = frame(q);
    Tangent t{Vec3{}, Vec3{}};
    for (int k = 0; k < 4; ++k) {
        t.du += fr[k].du * c[k];
        t.dp += fr[k].dp * c[k];
    }
    return t;
}

std::array<double, 4> DiscBundleManifold::components(const Point& q, const Tangent& t) const {
    // Dual basis to cotangent_frame: base components on (e1, e2), covector
    // components on (e1, e2); the u-component of dp is determined by tangency.
    const geom::OrientedFrame fr = geom::tangent_frame(q.base());
    const Vec3 e1 = fr.e1().vec(), e2 = fr.e2().vec();
    return {t.du.dot(e1), t.du.dot(e2), t.dp.dot(e1), t.dp.dot(e2)};
}

DiscBundleManifold::Tangent DiscBundleManifold::quotient(const Point& fwd, const Point& bwd,
                                                         double step) const {
    return {(fwd.base().coords() - bwd.base().coords()) / (2.0 * step),
            (fwd.covector() - bwd.covector()) / (2.0 * step)};
}

DiscBundleManifold::Point DiscBundleManifold::sample(const SampleStream& st,
                                                     std::uint64_t i) const {
    const SpherePoint u = st.sphere_point(i, 0);
    const OrientedFrame fr = geom::tangent_frame(u);
    const double psi = 2.0 * std::numbers::pi * st.uniform(i, 6);
    const double nu = norm_lo + (norm_hi - norm_lo) * st.uniform(i, 7);
    return Point(u, (fr.e1().vec() * std::cos(psi) + fr.e2().vec() * std::sin(psi)) * nu);
}

// ---------------------------------------------------------------------------
// Named operations
// ---------------------------------------------------------------------------

Mat4 differential(const ProductMap& map, const ProductPoint& p, double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("differential: step must be positive");
    }
    return differential_on(ProductManifold{}, map, p, step);
}

double pullback_residual(const ProductMap& map, const ProductPoint& p,
                         const ProductTangent& a, const ProductTangent& b, double step) {
    const ProductManifold man;
    const ProductManifold::Tangent ta{a.u.vec(), a.v.vec()};
    const ProductManifold::Tangent tb{b.u.vec(), b.v.vec()};
    return pullback_residual_on(man, map, p, ta, tb, step);
}

VerificationReport symplectic_report(const ProductMap& map, std::string name,
                                     std::size_t n_samples, std::uint64_t seed,
                                     double step, double tol) {
    return symplectic_report_on(ProductManifold{}, map, std::move(name), n_samples, seed,
                                step, tol);
}

VerificationReport symplectic_report_eta(const CotangentMap& map, std::string name,
                                         std::size_t n_samples, std::uint64_t seed,
                                         double step, double tol,
                                         double norm_lo, double norm_hi) {
    return symplectic_report_on(DiscBundleManifold{norm_lo, norm_hi}, map, std::move(name),
                                n_samples, seed, step, tol);
}

double hamiltonian_residual(const ProductPoint& p, double step) {
    const ProductManifold man;
    // Generator of the circle action, by central differences at t = 0.
    const ProductPoint fwd = maps::rho(step, p);
    const ProductPoint bwd = maps::rho(-step, p);
    const auto gen = man.tangentialize(p, man.quotient(fwd, bwd, step));

    double worst = 0.0;
    for (const auto& v : man.frame(p)) {
        const double dmu = (maps::mu(man.nudge(p, v, step)) -
                            maps::mu(man.nudge(p, v, -step))) / (2.0 * step);
        worst = std::max(worst, std::abs(man.form(p, v, gen) - dmu));
    }
    return worst;
}

LinearMap2x2 normal_action(const ProductMap& map, const SpherePoint& x, double step) {
    const ProductPoint p{x, x};
    if (geom::distance(map(p), p) > 1e-8) {
        throw std::invalid_argument("normal_action: map does not fix (x,x)");
    }
    const ProductManifold man;
    const OrientedFrame fr = geom::tangent_frame(x);
    const Vec3 e[2] = {fr.e1().vec(), fr.e2().vec()};
    Mat2 m;
    for (int j = 0; j < 2; ++j) {
        const auto pushed = push_on(man, map, p, ProductManifold::Tangent{e[j], -e[j]}, step);
        const Vec3 normal_part = (pushed.u - pushed.v) / 2.0;
        (j == 0 ? m.a : m.b) = normal_part.dot(e[0]);
        (j == 0 ? m.c : m.d) = normal_part.dot(e[1]);
    }
    return LinearMap2x2(m, x);
}

}  // namespace twistlab::verify
