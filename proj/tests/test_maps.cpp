#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twistlab/maps.hpp"
#include "twistlab/sampling.hpp"

using namespace twistlab::maps;
using namespace twistlab::geom;
using twistlab::verify::SampleStream;

namespace {
constexpr double kPi = std::numbers::pi;
const SampleStream stream(515);

ProductPoint banded(std::uint64_t i, double c_lo, double c_hi) {
    return stream.banded_product_point(i, c_lo, c_hi);
}
}  // namespace

TEST_CASE("profile_r plateaus and interior") {
    CHECK(profile_r(0.3) == -kPi);
    CHECK(profile_r(0.5) == -kPi);
    CHECK(profile_r(1.0) == 0.0);
    CHECK(profile_r(1.5) == 0.0);
    const double mid = profile_r(0.75);
    CHECK(mid > -kPi);
    CHECK(mid < 0.0);
    CHECK(mid == doctest::Approx(-kPi / 2.0));  // symmetric bump at the midpoint
}

TEST_CASE("profile_r mirror identity of the symmetric bump") {
    for (int k = 1; k < 50; ++k) {
        const double t = 0.5 + 0.5 * double(k) / 50.0;
        CHECK(std::abs(profile_r(t) - (-kPi - profile_r(1.5 - t))) <= 1e-12);
    }
}

TEST_CASE("profile_r is monotone nondecreasing on the transition") {
    double prev = -kPi;
    for (int k = 0; k <= 400; ++k) {
        const double v = profile_r(0.5 + 0.5 * double(k) / 400.0);
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    CHECK(prev == 0.0);
}

TEST_CASE("profile derivatives vanish at the edges (finite differences)") {
    const double h = 1e-3;
    for (const double edge : {0.5, 1.0}) {
        const double d1 = (profile_r(edge + h) - profile_r(edge - h)) / (2.0 * h);
        const double d2 =
            (profile_r(edge + h) - 2.0 * profile_r(edge) + profile_r(edge - h)) / (h * h);
        CHECK(std::abs(d1) <= 1e-6);
        CHECK(std::abs(d2) <= 1e-6);
    }
}

TEST_CASE("RadialProfile general plateaus are bit-exact") {
    const RadialProfile prof(2.5, -1.25, -1.0, 3.0);
    CHECK(prof(-1.0) == 2.5);
    CHECK(prof(-100.0) == 2.5);
    CHECK(prof(3.0) == -1.25);
    CHECK(prof(77.0) == -1.25);
    CHECK_THROWS_AS(RadialProfile(0.0, 1.0, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("rho: zero angle, full turn, bisector swap, invariance of |x+y|") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const ProductPoint p = stream.product_point(i);
        if ((p.x.coords() + p.y.coords()).norm() < 1e-3) continue;
        CHECK(distance(rho(0.0, p), p) == 0.0);
        CHECK(distance(rho(2.0 * kPi, p), p) <= 1e-12);
        const ProductPoint swapped = rho(kPi, p);
        CHECK(distance(swapped, swap_iota(p)) <= 1e-12);
        CHECK(std::abs(mu(rho(1.234, p)) - mu(p)) <= 1e-12);
    }
}

TEST_CASE("rho circle-action law") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const ProductPoint p = banded(i, -0.9, 1.0);
        const double s = 8.0 * (stream.uniform(i, 12) - 0.5);
        const double t = 8.0 * (stream.uniform(i, 13) - 0.5);
        CHECK(distance(rho(s, rho(t, p)), rho(s + t, p)) <= 1e-12);
    }
}

TEST_CASE("rho rejects the antidiagonal") {
    const SpherePoint x(Vec3(0.3, -0.4, 0.5));
    CHECK_THROWS_AS(rho(1.0, ProductPoint{x, x.antipode()}), std::domain_error);
}

TEST_CASE("mu: diagonal, antidiagonal, range") {
    const SpherePoint x(Vec3(0.6, 0.0, 0.8));
    CHECK(mu({x, x}) == doctest::Approx(-2.0));
    CHECK(mu({x, x.antipode()}) == doctest::Approx(0.0));
    for (std::uint64_t i = 0; i < 200; ++i) {
        const double m = mu(stream.product_point(i));
        CHECK(m <= 0.0);
        CHECK(m >= -2.0);
    }
}

TEST_CASE("tau: swap at the antidiagonal, identity on the diagonal") {
    const ProductPoint anti{SpherePoint(Vec3(1, 0, 0)), SpherePoint(Vec3(-1, 0, 0))};
    const ProductPoint swapped = tau(anti);
    CHECK(max_abs_diff(swapped.x.coords(), Vec3(-1, 0, 0)) == 0.0);
    CHECK(max_abs_diff(swapped.y.coords(), Vec3(1, 0, 0)) == 0.0);

    const ProductPoint diag{SpherePoint(Vec3(0, 0, 1)), SpherePoint(Vec3(0, 0, 1))};
    CHECK(distance(tau(diag), diag) == 0.0);
}

TEST_CASE("tau restricted to the antidiagonal is the antipodal swap") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const SpherePoint x = stream.sphere_point(i, 0);
        const ProductPoint t = tau({x, x.antipode()});
        CHECK(distance(t.x, x.antipode()) <= 1e-15);
        CHECK(distance(t.y, x) <= 1e-15);
    }
}

TEST_CASE("tau branch regions are exact; seam formulas agree") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        const ProductPoint swap_region = banded(i, -1.0, -0.875);
        CHECK(distance(tau(swap_region), swap_iota(swap_region)) == 0.0);

        const ProductPoint id_region = banded(i, -0.5, 1.0);
        CHECK(distance(tau(id_region), id_region) == 0.0);

        const ProductPoint seam = banded(i, -0.875, -0.875);
        const double s = (seam.x.coords() + seam.y.coords()).norm();
        CHECK(std::abs(s - 0.5) <= 1e-12);
        CHECK(distance(swap_iota(seam), rho(profile_r(s), seam)) <= 1e-12);
    }
}

TEST_CASE("tau_inv: inverse, involution on the swap region, diagonal fixed") {
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const ProductPoint p = stream.product_point(i);
        CHECK(distance(tau_inv(tau(p)), p) <= 1e-12);
        CHECK(distance(tau(tau_inv(p)), p) <= 1e-12);
    }
    const ProductPoint anti{SpherePoint(Vec3(1, 0, 0)), SpherePoint(Vec3(-1, 0, 0))};
    CHECK(distance(tau_inv(anti), swap_iota(anti)) == 0.0);
    const SpherePoint x(Vec3(0.48, -0.6, 0.64));
    CHECK(distance(tau_inv({x, x}), {x, x}) == 0.0);
}

TEST_CASE("homotopy endpoints and frozen region") {
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const ProductPoint p = stream.product_point(i);
        CHECK(distance(homotopy_h(0.0, p), p) == 0.0);
        CHECK(distance(homotopy_h(1.0, p), tau(tau(p))) <= 1e-9);
    }
    for (std::uint64_t i = 0; i < 300; ++i) {
        const ProductPoint p = banded(i, -1.0, -0.875);
        const double s = stream.uniform(i, 9);
        CHECK(distance(homotopy_h(s, p), p) == 0.0);
    }
}

TEST_CASE("homotopy rejects s outside [0,1]") {
    const ProductPoint p{SpherePoint(Vec3(0, 0, 1)), SpherePoint(Vec3(1, 0, 0))};
    CHECK_THROWS_AS(homotopy_h(-0.01, p), std::domain_error);
    CHECK_THROWS_AS(homotopy_h(1.01, p), std::domain_error);
}

TEST_CASE("swap_iota is the involution interchanging factors") {
    const ProductPoint p{SpherePoint(Vec3(1, 0, 0)), SpherePoint(Vec3(0, 1, 0))};
    const ProductPoint s = swap_iota(p);
    CHECK(max_abs_diff(s.x.coords(), Vec3(0, 1, 0)) == 0.0);
    CHECK(max_abs_diff(s.y.coords(), Vec3(1, 0, 0)) == 0.0);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ProductPoint q = stream.product_point(i);
        CHECK(distance(swap_iota(swap_iota(q)), q) == 0.0);
    }
    // iota coincides with tau on the swap region
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ProductPoint q = banded(i, -1.0, -0.875);
        CHECK(distance(swap_iota(q), tau(q)) == 0.0);
    }
}

TEST_CASE("loop_lambda: endpoints, diagonal fixed") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const ProductPoint p = stream.product_point(i);
        CHECK(distance(loop_lambda(0.0, p), p) == 0.0);
        CHECK(distance(loop_lambda(1.0, p), p) <= 1e-12);
        const SpherePoint x = p.x;
        const double t = stream.uniform(i, 9);
        CHECK(distance(loop_lambda(t, {x, x}), {x, x}) <= 1e-12);
    }
}
