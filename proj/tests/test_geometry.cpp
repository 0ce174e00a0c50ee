#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "twistlab/geometry.hpp"
#include "twistlab/sampling.hpp"

using namespace twistlab::geom;
using twistlab::verify::SampleStream;

namespace {
constexpr double kPi = std::numbers::pi;
const SampleStream stream(2024);
}  // namespace

TEST_CASE("SpherePoint renormalizes and rejects degenerate input") {
    const SpherePoint p(Vec3(3.0, 0.0, 4.0));
    CHECK(std::abs(p.coords().norm() - 1.0) <= 1e-12);
    CHECK(p.coords().x == doctest::Approx(0.6));
    CHECK(p.coords().z == doctest::Approx(0.8));
    CHECK_THROWS_AS(SpherePoint(Vec3(0.0, 0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(SpherePoint(Vec3(0.0, 0.0, std::nan(""))), std::domain_error);
}

TEST_CASE("TangentVector enforces orthogonality; projected factory repairs drift") {
    const SpherePoint x(Vec3(0.0, 0.0, 1.0));
    CHECK_NOTHROW(TangentVector(x, Vec3(1.0, 2.0, 0.0)));
    CHECK_THROWS_AS(TangentVector(x, Vec3(1.0, 0.0, 0.5)), std::domain_error);
    const TangentVector t = TangentVector::projected(x, Vec3(1.0, 0.0, 0.5));
    CHECK(std::abs(t.vec().dot(x.coords())) <= 1e-15);
    CHECK(t.vec().x == doctest::Approx(1.0));
}

TEST_CASE("rotate: quarter turn, axis fixed, bisector swap") {
    const Vec3 v = rotate(Vec3(0.0, 0.0, 1.0), kPi / 2.0, Vec3(1.0, 0.0, 0.0));
    CHECK(max_abs_diff(v, Vec3(0.0, 1.0, 0.0)) <= 1e-15);

    const Vec3 a(0.3, -1.2, 0.77);
    CHECK(max_abs_diff(rotate(a, 2.31, a), a) <= 1e-15);

    for (std::uint64_t i = 0; i < 200; ++i) {
        const SpherePoint x = stream.sphere_point(i, 0);
        const SpherePoint y = stream.sphere_point(i, 3);
        if ((x.coords() + y.coords()).norm() < 1e-6) continue;
        const Vec3 swapped = rotate(x.coords() + y.coords(), kPi, x.coords());
        CHECK(max_abs_diff(swapped, y.coords()) <= 1e-12);
    }

    CHECK_THROWS_AS(rotate(Vec3(0.0, 0.0, 0.0), 1.0, Vec3(1.0, 0.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("rotate properties: group law, full turn, norm and axis component") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Vec3 axis = stream.sphere_point(i, 0).coords();
        const Vec3 v = stream.sphere_point(i, 3).coords() * (0.5 + stream.uniform(i, 12));
        const double s = 4.0 * (stream.uniform(i, 13) - 0.5);
        const double t = 4.0 * (stream.uniform(i, 14) - 0.5);
        CHECK(max_abs_diff(rotate(axis, s, rotate(axis, t, v)), rotate(axis, s + t, v)) <=
              1e-12);
        CHECK(max_abs_diff(rotate(axis, 2.0 * kPi, v), v) <= 1e-12);
        CHECK(std::abs(rotate(axis, s, v).norm() - v.norm()) <= 1e-12);
        CHECK(std::abs(rotate(axis, s, v).dot(axis) - v.dot(axis)) <= 1e-12);
    }
}

TEST_CASE("rotate(a, 0, v) returns v bit-exactly") {
    const Vec3 v(0.123456, -0.77, 0.5);
    const Vec3 r = rotate(Vec3(1.0, 1.0, 1.0), 0.0, v);
    CHECK(r.x == v.x);
    CHECK(r.y == v.y);
    CHECK(r.z == v.z);
}

TEST_CASE("area_form: oriented frame gives 1, antisymmetry, base mismatch") {
    const SpherePoint x(Vec3(0.0, 0.0, 1.0));
    const TangentVector u(x, Vec3(1.0, 0.0, 0.0));
    const TangentVector v(x, Vec3(0.0, 1.0, 0.0));
    CHECK(area_form(x, u, v) == doctest::Approx(1.0));
    CHECK(area_form(x, u, u) == 0.0);

    const SpherePoint other(Vec3(1.0, 0.0, 0.0));
    const TangentVector w(other, Vec3(0.0, 1.0, 0.0));
    CHECK_THROWS_AS(area_form(x, u, w), std::domain_error);
}

TEST_CASE("area form integrates to 4 pi (independent quadrature)") {
    CHECK(std::abs(oracles::sphere_area_by_quadrature() - 4.0 * kPi) <= 1e-6);
}

TEST_CASE("rotations are symplectic for the area form") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const SpherePoint x = stream.sphere_point(i, 0);
        const Vec3 axis = stream.sphere_point(i, 3).coords();
        const double t = 6.0 * (stream.uniform(i, 12) - 0.5);
        const OrientedFrame fr = tangent_frame(x);
        const SpherePoint rx(rotate(axis, t, x.coords()));
        const double before = area_form(x, fr.e1(), fr.e2());
        const double after = area_form_raw(rx.coords(), rotate(axis, t, fr.e1().vec()),
                                           rotate(axis, t, fr.e2().vec()));
        CHECK(std::abs(after - before) <= 1e-12);
    }
}

TEST_CASE("omega: split form, frame pairing, antisymmetry, nondegeneracy") {
    const SpherePoint nx(Vec3(0.0, 0.0, 1.0));
    const SpherePoint ny(Vec3(1.0, 0.0, 0.0));
    const ProductPoint p{nx, ny};
    const OrientedFrame fx = tangent_frame(nx);
    const OrientedFrame fy = tangent_frame(ny);
    const TangentVector zero_x = TangentVector::projected(nx, Vec3{});
    const TangentVector zero_y = TangentVector::projected(ny, Vec3{});

    // no cross terms
    CHECK(omega(p, ProductTangent{fx.e1(), zero_y}, ProductTangent{zero_x, fy.e1()}) == 0.0);
    // paired frame vectors on one factor
    CHECK(omega(p, ProductTangent{fx.e1(), zero_y}, ProductTangent{fx.e2(), zero_y}) ==
          doctest::Approx(1.0));

    for (std::uint64_t i = 0; i < 200; ++i) {
        const ProductPoint q = stream.product_point(i);
        const OrientedFrame gx = tangent_frame(q.x);
        const OrientedFrame gy = tangent_frame(q.y);
        const TangentVector zx = TangentVector::projected(q.x, Vec3{});
        const TangentVector zy = TangentVector::projected(q.y, Vec3{});
        const ProductTangent frame_vecs[4] = {{gx.e1(), zy},
                                              {gx.e2(), zy},
                                              {zx, gy.e1()},
                                              {zx, gy.e2()}};
        double c[4], n2 = 0.0;
        for (int k = 0; k < 4; ++k) {
            c[k] = stream.gaussian(i, 8 + k);
            n2 += c[k] * c[k];
        }
        if (n2 < 1e-12) continue;
        const ProductTangent a{
            TangentVector::projected(q.x, gx.e1().vec() * c[0] + gx.e2().vec() * c[1]),
            TangentVector::projected(q.y, gy.e1().vec() * c[2] + gy.e2().vec() * c[3])};
        double best = 0.0;
        for (const auto& b : frame_vecs) {
            CHECK(std::abs(omega(q, a, b) + omega(q, b, a)) <= 1e-12);
            best = std::max(best, std::abs(omega(q, a, b)));
        }
        CHECK(best > 1e-8 * std::sqrt(n2));
    }
}

TEST_CASE("retract: zero displacement, explicit value, third-order geodesic match") {
    const SpherePoint x(Vec3(0.0, 0.0, 1.0));
    CHECK(distance(retract(x, Vec3{}), x) == 0.0);

    const double h = 0.3;
    const SpherePoint r = retract(x, Vec3(h, 0.0, 0.0));
    const double scale = 1.0 / std::sqrt(1.0 + h * h);
    CHECK(max_abs_diff(r.coords(), Vec3(h * scale, 0.0, scale)) <= 1e-15);

    for (std::uint64_t i = 0; i < 50; ++i) {
        const SpherePoint y = stream.sphere_point(i, 0);
        const Vec3 e = tangent_frame(y).e1().vec();
        const double err2 = distance(retract(y, e * 1e-2), oracles::geodesic_step(y, e, 1e-2));
        const double err3 = distance(retract(y, e * 1e-3), oracles::geodesic_step(y, e, 1e-3));
        CHECK(err2 <= 1e-6);  // ~ h^3 / 3
        CHECK(err3 <= 1e-9);
        CHECK(err2 / std::max(err3, 1e-300) > 500.0);  // third-order scaling
        CHECK(err2 / std::max(err3, 1e-300) < 2000.0);
    }
}

TEST_CASE("retract_inverse inverts retract exactly") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const SpherePoint x = stream.sphere_point(i, 0);
        const OrientedFrame fr = tangent_frame(x);
        const Vec3 w = fr.e1().vec() * (0.4 * stream.uniform(i, 12)) +
                       fr.e2().vec() * (0.4 * stream.uniform(i, 13));
        CHECK(max_abs_diff(retract_inverse(x, retract(x, w)), w) <= 1e-12);
    }
    CHECK_THROWS_AS(retract_inverse(SpherePoint(Vec3(0, 0, 1)), SpherePoint(Vec3(0, 0, -1))),
                    std::domain_error);
}

TEST_CASE("tangent_frame: north pole convention and orientation invariant") {
    const OrientedFrame fr = tangent_frame(SpherePoint(Vec3(0.0, 0.0, 1.0)));
    CHECK(max_abs_diff(fr.e1().vec(), Vec3(1.0, 0.0, 0.0)) <= 1e-15);
    CHECK(max_abs_diff(fr.e2().vec(), Vec3(0.0, 1.0, 0.0)) <= 1e-15);

    for (std::uint64_t i = 0; i < 10000; ++i) {
        const SpherePoint x = stream.sphere_point(i, 0);
        const OrientedFrame f = tangent_frame(x);
        CHECK(std::abs(x.coords().dot(f.e1().vec().cross(f.e2().vec())) - 1.0) <= 1e-12);
    }
}

TEST_CASE("tangent_frame promises no equivariance") {
    const SpherePoint x(Vec3(0.0, 0.0, 1.0));
    const Vec3 axis(1.0, 1.0, 0.0);
    const SpherePoint rx(rotate(axis, 1.0, x.coords()));
    const Vec3 rotated_e1 = rotate(axis, 1.0, tangent_frame(x).e1().vec());
    CHECK(max_abs_diff(tangent_frame(rx).e1().vec(), rotated_e1) > 0.01);
}

TEST_CASE("OrientedFrame rejects bad frames") {
    const SpherePoint x(Vec3(0.0, 0.0, 1.0));
    const TangentVector e1(x, Vec3(1.0, 0.0, 0.0));
    const TangentVector e2(x, Vec3(0.0, 1.0, 0.0));
    const TangentVector long_e(x, Vec3(2.0, 0.0, 0.0));
    CHECK_NOTHROW(OrientedFrame(e1, e2));
    CHECK_THROWS_AS(OrientedFrame(e2, e1), std::domain_error);  // negatively oriented
    CHECK_THROWS_AS(OrientedFrame(long_e, e2), std::domain_error);
}
