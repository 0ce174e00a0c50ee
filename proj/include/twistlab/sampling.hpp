#pragma once

#include <cstdint>

#include "twistlab/geometry.hpp"

// Counter-based deterministic sampling: every draw is a pure function of
// (seed, sample index, slot). No sequential state, so results are identical
// no matter how sampling loops are scheduled or parallelized.

namespace twistlab::verify {

using geom::ProductPoint;
using geom::SpherePoint;
using geom::Vec3;

class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1).
    double uniform(std::uint64_t index, std::uint32_t slot) const;

    /// Standard gaussian (Box-Muller on two uniform slots).
    double gaussian(std::uint64_t index, std::uint32_t slot) const;

    /// Uniform point on S^2 via a normalized 3-gaussian (slots slot..slot+5).
    SpherePoint sphere_point(std::uint64_t index, std::uint32_t slot) const;

    /// Uniform point on S^2 x S^2 (slots 0..11).
    ProductPoint product_point(std::uint64_t index) const;

    /// Point of S^2 x S^2 with <x,y> uniform in [c_lo, c_hi] and y uniform on
    /// the corresponding circle around x; for c_lo = -1, c_hi = 1 this is the
    /// uniform product measure, so clamped ranges sample the conditioned
    /// uniform distribution on bands of |x+y|. Slots 0..7.
    ProductPoint banded_product_point(std::uint64_t index, double c_lo, double c_hi) const;

private:
    std::uint64_t word(std::uint64_t index, std::uint32_t slot) const;
    std::uint64_t seed_;
};

}  // namespace twistlab::verify
