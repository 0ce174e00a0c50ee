#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twistlab/maps.hpp"
#include "twistlab/verify.hpp"

using namespace twistlab;
using namespace twistlab::verify;
using geom::Mat2;
using geom::Mat4;
using geom::ProductPoint;
using geom::SpherePoint;
using geom::Vec3;

namespace {
constexpr double kPi = std::numbers::pi;
const SampleStream stream(777);

// Smooth but visibly non-symplectic control: second factor drifts toward a
// fixed direction.
ProductPoint distortion(const ProductPoint& p) {
    const Vec3 a(0.2, 0.3, 0.9);
    return {p.x, SpherePoint(p.y.coords() + (a - p.y.coords() * a.dot(p.y.coords())) * 0.4)};
}
}  // namespace

TEST_CASE("differential of the identity is the identity matrix") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const ProductPoint p = stream.product_point(i);
        const Mat4 j = differential([](const ProductPoint& q) { return q; }, p, 1e-5);
        CHECK(j.max_abs_diff(Mat4::identity()) <= 1e-10);
    }
    CHECK_THROWS_AS(differential([](const ProductPoint& q) { return q; },
                                 stream.product_point(0), 0.0),
                    std::invalid_argument);
}

TEST_CASE("differential of rho: block rotation on the diagonal, symplectic off it") {
    // On the diagonal the axis freezes and D rho is orthogonal with rotation
    // blocks; off the diagonal the axis varies with the point and D rho is
    // only symplectic.
    Mat4 omega_frames;  // omega in oriented frames: standard 2x2 blocks
    omega_frames.m[0][1] = omega_frames.m[2][3] = 1.0;
    omega_frames.m[1][0] = omega_frames.m[3][2] = -1.0;

    for (std::uint64_t i = 0; i < 50; ++i) {
        const double t = 2.0 * stream.uniform(i, 12);
        const auto rho_t = [t](const ProductPoint& q) { return maps::rho(t, q); };

        const SpherePoint x = stream.sphere_point(i, 0);
        const Mat4 jd = differential(rho_t, ProductPoint{x, x}, 1e-5);
        CHECK(jd.transpose().mul(jd).max_abs_diff(Mat4::identity()) <= 1e-8);

        const ProductPoint p = stream.banded_product_point(i, -0.8, 0.9);
        const Mat4 j = differential(rho_t, p, 1e-5);
        CHECK(j.transpose().mul(omega_frames).mul(j).max_abs_diff(omega_frames) <= 1e-7);
    }
}

TEST_CASE("differential converges at second order (Richardson on tau)") {
    int checked = 0;
    for (std::uint64_t i = 0; i < 40 && checked < 12; ++i) {
        const ProductPoint p = stream.banded_product_point(i, -0.85, -0.55);
        const Mat4 j1 = differential(maps::tau, p, 4e-3);
        const Mat4 j2 = differential(maps::tau, p, 2e-3);
        const Mat4 j4 = differential(maps::tau, p, 1e-3);
        const double d12 = j1.max_abs_diff(j2);
        const double d24 = j2.max_abs_diff(j4);
        if (d24 < 1e-9) continue;  // too flat to resolve the ratio
        const double ratio = d12 / d24;
        CHECK(ratio > 2.5);
        CHECK(ratio < 6.0);
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("pullback_residual: identity exact, swap preserves omega, control fails") {
    double worst_id = 0.0, worst_swap = 0.0, best_control = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const ProductPoint p = stream.product_point(i);
        const auto fx = geom::tangent_frame(p.x);
        const auto fy = geom::tangent_frame(p.y);
        const geom::ProductTangent a{fx.e1(), geom::TangentVector::projected(p.y, Vec3{})};
        const geom::ProductTangent b{geom::TangentVector::projected(p.x, Vec3{}), fy.e2()};
        const geom::ProductTangent c{fx.e2(), fy.e1()};
        for (const auto* t1 : {&a, &b, &c}) {
            for (const auto* t2 : {&a, &b, &c}) {
                if (t1 == t2) continue;
                worst_id = std::max(
                    worst_id, pullback_residual([](const ProductPoint& q) { return q; }, p,
                                                *t1, *t2, 1e-5));
                worst_swap = std::max(worst_swap,
                                      pullback_residual(maps::swap_iota, p, *t1, *t2, 1e-5));
                best_control = std::max(best_control,
                                        pullback_residual(distortion, p, *t1, *t2, 1e-5));
            }
        }
    }
    // chart roundoff floors the identity residual near 1e-11 at step 1e-5
    CHECK(worst_id <= 1e-10);
    CHECK(worst_swap <= 1e-8);
    CHECK(best_control > 0.1);
}

TEST_CASE("symplectic_report: tau passes, h_0.37 passes, lambda fails") {
    const auto tau_rep = symplectic_report(maps::tau, "tau", 2000, 11, 1e-5, 1e-6);
    CHECK(tau_rep.pass);
    CHECK(tau_rep.max_residual <= 1e-6);
    CHECK(tau_rep.mean_residual <= tau_rep.max_residual);

    const auto h_rep = symplectic_report(
        [](const ProductPoint& p) { return maps::homotopy_h(0.37, p); }, "h", 2000, 11,
        1e-5, 1e-6);
    CHECK(h_rep.pass);

    const auto lam_rep = symplectic_report(
        [](const ProductPoint& p) { return maps::loop_lambda(0.25, p); }, "lambda", 2000,
        11, 1e-5, 1e-6);
    CHECK_FALSE(lam_rep.pass);
    CHECK(lam_rep.max_residual > 0.01);

    CHECK_THROWS_AS(symplectic_report(maps::tau, "tau", 0, 11, 1e-5, 1e-6),
                    std::invalid_argument);
}

TEST_CASE("symplectic_report is deterministic for a fixed seed") {
    const auto r1 = symplectic_report(maps::tau, "tau", 500, 99, 1e-5, 1e-6);
    const auto r2 = symplectic_report(maps::tau, "tau", 500, 99, 1e-5, 1e-6);
    CHECK(r1.max_residual == r2.max_residual);
    CHECK(r1.mean_residual == r2.mean_residual);
    const auto r3 = symplectic_report(maps::tau, "tau", 500, 100, 1e-5, 1e-6);
    CHECK(r1.max_residual != r3.max_residual);
}

TEST_CASE("hamiltonian_residual: small off the antidiagonal, zero field on the diagonal") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        const ProductPoint p = stream.banded_product_point(i, -0.995, 1.0);
        CHECK(hamiltonian_residual(p, 1e-5) <= 1e-6);
    }
    // on the diagonal the action freezes: generator ~ 0 and d mu = 0
    const SpherePoint x = stream.sphere_point(3, 0);
    CHECK(hamiltonian_residual({x, x}, 1e-5) <= 1e-6);
    const ProductPoint diag{x, x};
    const ProductPoint fwd = maps::rho(1e-5, diag), bwd = maps::rho(-1e-5, diag);
    CHECK((fwd.x.coords() - bwd.x.coords()).norm() / 2e-5 <= 1e-8);

    CHECK_THROWS_AS(hamiltonian_residual({x, x.antipode()}, 1e-5), std::domain_error);
}

TEST_CASE("hamiltonian sign convention: flipping it leaves a ~2|dmu| residual") {
    const ProductManifold man;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ProductPoint p = stream.banded_product_point(i, -0.9, 0.9);
        const ProductPoint fwd = maps::rho(1e-5, p), bwd = maps::rho(-1e-5, p);
        const auto gen = man.tangentialize(p, man.quotient(fwd, bwd, 1e-5));
        double flipped = 0.0, dmu_mag = 0.0;
        for (const auto& v : man.frame(p)) {
            const double dmu = (maps::mu(man.nudge(p, v, 1e-5)) -
                                maps::mu(man.nudge(p, v, -1e-5))) / 2e-5;
            flipped = std::max(flipped, std::abs(man.form(p, gen, v) - dmu));
            dmu_mag = std::max(dmu_mag, std::abs(dmu));
        }
        if (dmu_mag > 0.1) {
            CHECK(flipped > dmu_mag);  // the wrong sign misses by ~2|dmu|
        }
        worst = std::max(worst, dmu_mag);
    }
    CHECK(worst > 0.5);  // the control actually exercised the bound
}

TEST_CASE("normal_action: tau is trivial, h_s rotates by 2 pi s, lambda by 2 pi t") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const SpherePoint x = stream.sphere_point(i, 0);
        CHECK(normal_action(maps::tau, x, 1e-5).mat.max_abs_diff(Mat2::identity()) <= 1e-6);

        const double s = stream.uniform(i, 7);
        const auto hs = [s](const ProductPoint& p) { return maps::homotopy_h(s, p); };
        CHECK(normal_action(hs, x, 1e-5).mat.max_abs_diff(Mat2::rotation(2.0 * kPi * s)) <=
              1e-5);

        const double t = stream.uniform(i, 9);
        const auto lt = [t](const ProductPoint& p) { return maps::loop_lambda(t, p); };
        CHECK(normal_action(lt, x, 1e-5).mat.max_abs_diff(Mat2::rotation(2.0 * kPi * t)) <=
              1e-5);
    }
}

TEST_CASE("normal_action records determinant and base, rejects non-fixing maps") {
    const SpherePoint x(Vec3(0.1, -0.7, 0.9));
    const auto act = normal_action(maps::tau, x, 1e-5);
    CHECK(act.det == doctest::Approx(1.0));
    CHECK(geom::distance(act.base, x) <= 1e-15);

    const auto shove = [](const ProductPoint& p) {
        return ProductPoint{SpherePoint(geom::rotate(Vec3(0, 0, 1), 0.3, p.x.coords())),
                            p.y};
    };
    CHECK_THROWS_AS(normal_action(shove, x, 1e-5), std::invalid_argument);
}

TEST_CASE("VerificationReport: pass invariant and stable JSON field names") {
    const auto rep = VerificationReport::make("demo", 10, 7, 1e-5, 2.0, 1.0, 1.0);
    CHECK_FALSE(rep.pass);
    const auto good = VerificationReport::make("demo", 10, 7, 1e-5, 0.5, 0.2, 1.0);
    CHECK(good.pass);

    const auto j = good.to_json();
    const char* keys[] = {"name", "samples", "seed", "step", "max_residual",
                          "mean_residual", "tol", "pass"};
    std::size_t pos = 0;
    for (const auto& item : j.items()) {
        REQUIRE(pos < 8);
        CHECK(item.key() == keys[pos]);
        ++pos;
    }
    CHECK(pos == 8);
    CHECK(j["pass"].get<bool>());
    CHECK(j["samples"].get<std::size_t>() == 10);
}

TEST_CASE("SampleStream: deterministic, uniform-ish, well-spread on the sphere") {
    const SampleStream a(5), b(5), c(6);
    CHECK(a.uniform(17, 3) == b.uniform(17, 3));
    CHECK(a.uniform(17, 3) != c.uniform(17, 3));

    double acc = 0.0;
    Vec3 mean{};
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = a.uniform(i, 0);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        acc += u;
        mean += a.sphere_point(i, 0).coords();
    }
    CHECK(std::abs(acc / n - 0.5) < 0.01);
    CHECK((mean / double(n)).norm() < 0.02);  // no directional bias
}
