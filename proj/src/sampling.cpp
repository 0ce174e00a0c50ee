#include "twistlab/sampling.hpp"

#include <cmath>
#include <numbers>

namespace twistlab::verify {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t SampleStream::word(std::uint64_t index, std::uint32_t slot) const {
    const std::uint64_t lane = splitmix64(seed_ ^ (index * 0xA24BAED4963EE407ULL));
    return splitmix64(lane + std::uint64_t(slot) * 0x9FB21C651E98DF25ULL);
}

double SampleStream::uniform(std::uint64_t index, std::uint32_t slot) const {
    return double(word(index, slot) >> 11) * 0x1.0p-53;
}

double SampleStream::gaussian(std::uint64_t index, std::uint32_t slot) const {
    // u1 in (0,1] to keep the log finite.
    const double u1 = (double((word(index, 2 * slot) >> 11)) + 1.0) * 0x1.0p-53;
    const double u2 = uniform(index, 2 * slot + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SpherePoint SampleStream::sphere_point(std::uint64_t index, std::uint32_t slot) const {
    for (std::uint32_t shift = 0;; shift += 101) {
        const Vec3 g(gaussian(index, slot + shift),
                     gaussian(index, slot + shift + 1),
                     gaussian(index, slot + shift + 2));
        if (g.norm() > 1e-6) {
            return SpherePoint(g);
        }
    }
}

ProductPoint SampleStream::product_point(std::uint64_t index) const {
    return {sphere_point(index, 0), sphere_point(index, 3)};
}

ProductPoint SampleStream::banded_product_point(std::uint64_t index,
                                                double c_lo, double c_hi) const {
    const SpherePoint x = sphere_point(index, 0);
    const double c = c_lo + (c_hi - c_lo) * uniform(index, 6);
    const double psi = 2.0 * std::numbers::pi * uniform(index, 7);
    const geom::OrientedFrame fr = geom::tangent_frame(x);
    const double rad = std::sqrt(std::max(0.0, 1.0 - c * c));
    const Vec3 y = x.coords() * c +
                   (fr.e1().vec() * std::cos(psi) + fr.e2().vec() * std::sin(psi)) * rad;
    return {x, SpherePoint(y)};
}

}  // namespace twistlab::verify
