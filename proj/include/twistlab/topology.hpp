#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "twistlab/verify.hpp"

// Discrete topological quantities: the action on H_2(S^2 x S^2) through
// mapping degrees, and winding numbers of loops of positive-determinant
// 2x2 matrices (evaluated normal-bundle actions).
//
// Degrees are integrals (1/4pi) int g*sigma computed by Gauss-Legendre nodes
// in the polar direction crossed with a periodic trapezoid rule in azimuth;
// preimage counting is never used. Signs are pinned by the project-wide
// orientation conventions (see geometry.hpp); under them the loop of
// normal actions of both the homotopy h and the loop lambda winds by +1.

namespace twistlab::topo {

using geom::Mat2;
using geom::ProductPoint;
using geom::SpherePoint;
using verify::LinearMap2x2;
using verify::ProductMap;

using SphereMap = std::function<SpherePoint(const SpherePoint&)>;

/// Raised when a quadrature value refuses to settle near an integer; carries
/// the offending value. Remedy: raise the node count.
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, double value)
        : std::runtime_error(what), value_(value) {}
    double value() const { return value_; }

private:
    double value_;
};

/// Raised when consecutive loop samples jump by a polar angle >= pi/2.
class UndersamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre {
    explicit GaussLegendre(int n);
    std::vector<double> nodes, weights;
};

/// Mapping degree of g: S^2 -> S^2 as (1/4pi) * int g*sigma over an
/// (nodes x nodes) product grid. The pre-rounding value must land within
/// 0.05 of an integer (ResolutionError otherwise); pass `pre_rounding` to
/// retrieve its distance to the returned integer. Optional trace CSV:
/// one "index,value" row per polar band.
int mapping_degree(const SphereMap& g, int nodes, double fd_step = 1e-5,
                   std::ostream* trace = nullptr, double* pre_rounding = nullptr);

/// Basepoints for the slice inclusions w -> (w, y0) and w -> (x0, w).
struct BasepointSet {
    SpherePoint x0;
    SpherePoint y0;
};

/// Default basepoints, plus a second set rotated by a fixed rotation
/// (axis (1,2,3)/sqrt(14), angle 0.9), chosen off the symmetry axes of the
/// bundled maps.
BasepointSet default_basepoints();
BasepointSet rotated_basepoints();

/// Integer 2x2 matrix of the action on H_2 in the basis
/// (A1, A2) = ([S^2 x pt], [pt x S^2]): entry (i, j) is the degree of
/// projection_i o f o slice-inclusion_j.
struct HomologyMatrix {
    int m[2][2] = {{0, 0}, {0, 0}};
    double max_rounding_error = 0.0;  // worst pre-rounding deviation seen

    bool operator==(const HomologyMatrix& o) const {
        return m[0][0] == o.m[0][0] && m[0][1] == o.m[0][1] &&
               m[1][0] == o.m[1][0] && m[1][1] == o.m[1][1];
    }
    HomologyMatrix mul(const HomologyMatrix& o) const;
    static HomologyMatrix identity();
};

std::ostream& operator<<(std::ostream& os, const HomologyMatrix& h);

/// Computes the homology matrix over both basepoint sets and requires exact
/// agreement (std::runtime_error on disagreement — a smoothness or
/// resolution failure).
HomologyMatrix homology_matrix(const ProductMap& f, int nodes, double fd_step = 1e-5);
HomologyMatrix homology_matrix(const ProductMap& f, const BasepointSet& bp, int nodes,
                               double fd_step = 1e-5);

/// Closed loop of positive-determinant 2x2 maps, endpoints equal.
struct MatrixLoop {
    std::vector<LinearMap2x2> samples;
};

/// Rotation angle of the polar factor of M (det M > 0 required), by the
/// closed-form 2x2 polar decomposition: theta = atan2(c - b, a + d).
double polar_angle(const Mat2& m);

/// Net turns of the polar rotation factor along the loop: unwraps the angle
/// over consecutive samples and returns (theta_N - theta_0) / 2pi rounded.
/// Throws UndersamplingError on angle jumps >= pi/2, std::domain_error on a
/// nonpositive determinant, std::invalid_argument on open endpoints.
/// Optional trace CSV: "index,angle" with the unwrapped angle.
int winding_number(const MatrixLoop& loop, std::ostream* trace = nullptr);

using MapFamily = std::function<ProductMap(double)>;

/// Winding of s -> normal_action(family(s), x) sampled at n_samples + 1
/// equispaced parameters in [0, 1].
int normal_loop_winding(const MapFamily& family, const SpherePoint& x,
                        int n_samples = 64, double fd_step = 1e-5,
                        std::ostream* trace = nullptr);

}  // namespace twistlab::topo
