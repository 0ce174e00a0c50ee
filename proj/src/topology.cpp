#include "twistlab/topology.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

namespace twistlab::topo {

namespace {
constexpr double kPi = std::numbers::pi;
using geom::OrientedFrame;
using geom::Vec3;
}  // namespace

GaussLegendre::GaussLegendre(int n) {
    if (n < 2) {
        throw std::invalid_argument("GaussLegendre: need at least 2 nodes");
    }
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

int mapping_degree(const SphereMap& g, int nodes, double fd_step,
                   std::ostream* trace, double* pre_rounding) {
    if (nodes < 2) {
        throw std::invalid_argument("mapping_degree: need at least 2 nodes per direction");
    }
    const GaussLegendre gl(nodes);
    const int n_az = nodes;
    const double dphi = 2.0 * kPi / double(n_az);

    double total = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double u = gl.nodes[i];
        const double rad = std::sqrt(std::max(0.0, 1.0 - u * u));
        double band = 0.0;
        for (int j = 0; j < n_az; ++j) {
            const double phi = dphi * double(j);
            const SpherePoint x(Vec3(rad * std::cos(phi), rad * std::sin(phi), u));
            const OrientedFrame fr = geom::tangent_frame(x);
            const auto push = [&](const Vec3& e) {
                const SpherePoint fwd = g(geom::retract(x, e * fd_step));
                const SpherePoint bwd = g(geom::retract(x, e * -fd_step));
                return (fwd.coords() - bwd.coords()) / (2.0 * fd_step);
            };
            const Vec3 d1 = push(fr.e1().vec());
            const Vec3 d2 = push(fr.e2().vec());
            // Pullback of the area form on an oriented orthonormal frame is
            // frame-independent, so the frame's branch locus is harmless.
            band += geom::area_form_raw(g(x).coords(), d1, d2);
        }
        total += gl.weights[i] * dphi * band;
        if (trace) {
            *trace << i << "," << gl.weights[i] * dphi * band << "\n";
        }
    }
    const double value = total / (4.0 * kPi);
    const double nearest = std::round(value);
    if (std::abs(value - nearest) > 0.05) {
        std::ostringstream msg;
        msg << "mapping_degree: quadrature value " << value
            << " not within 0.05 of an integer; raise the node count";
        throw ResolutionError(msg.str(), value);
    }
    if (pre_rounding) {
        *pre_rounding = std::abs(value - nearest);
    }
    return int(nearest);
}

BasepointSet default_basepoints() {
    return {SpherePoint(Vec3(1.0, 0.0, 0.0)), SpherePoint(Vec3(0.0, 0.0, 1.0))};
}

BasepointSet rotated_basepoints() {
    const Vec3 axis(1.0, 2.0, 3.0);
    const BasepointSet base = default_basepoints();
    return {SpherePoint(geom::rotate(axis, 0.9, base.x0.coords())),
            SpherePoint(geom::rotate(axis, 0.9, base.y0.coords()))};
}

HomologyMatrix HomologyMatrix::mul(const HomologyMatrix& o) const {
    HomologyMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    r.max_rounding_error = std::max(max_rounding_error, o.max_rounding_error);
    return r;
}

HomologyMatrix HomologyMatrix::identity() {
    HomologyMatrix r;
    r.m[0][0] = r.m[1][1] = 1;
    return r;
}

std::ostream& operator<<(std::ostream& os, const HomologyMatrix& h) {
    return os << "[[" << h.m[0][0] << "," << h.m[0][1] << "],[" << h.m[1][0] << ","
              << h.m[1][1] << "]]";
}

HomologyMatrix homology_matrix(const ProductMap& f, const BasepointSet& bp, int nodes,
                               double fd_step) {
    HomologyMatrix h;
    for (int j = 0; j < 2; ++j) {
        const auto slice = [&](const SpherePoint& w) {
            return j == 0 ? f(ProductPoint{w, bp.y0}) : f(ProductPoint{bp.x0, w});
        };
        for (int i = 0; i < 2; ++i) {
            const SphereMap component = [&](const SpherePoint& w) {
                const ProductPoint q = slice(w);
                return i == 0 ? q.x : q.y;
            };
            double dev = 0.0;
            h.m[i][j] = mapping_degree(component, nodes, fd_step, nullptr, &dev);
            h.max_rounding_error = std::max(h.max_rounding_error, dev);
        }
    }
    return h;
}

HomologyMatrix homology_matrix(const ProductMap& f, int nodes, double fd_step) {
    const HomologyMatrix a = homology_matrix(f, default_basepoints(), nodes, fd_step);
    const HomologyMatrix b = homology_matrix(f, rotated_basepoints(), nodes, fd_step);
    if (!(a == b)) {
        std::ostringstream msg;
        msg << "homology_matrix: basepoint sets disagree (" << a << " vs " << b
            << "); input not smooth or resolution too low";
        throw std::runtime_error(msg.str());
    }
    HomologyMatrix r = a;
    r.max_rounding_error = std::max(a.max_rounding_error, b.max_rounding_error);
    return r;
}

double polar_angle(const Mat2& m) {
    if (!(m.det() > 0.0)) {
        throw std::domain_error("polar_angle: determinant must be positive");
    }
    // M + det(M) M^{-T} = tr(S) Q for the polar factor Q, which for 2x2 reads
    // [[a+d, b-c], [c-b, a+d]] up to positive scale.
    return std::atan2(m.c - m.b, m.a + m.d);
}

int winding_number(const MatrixLoop& loop, std::ostream* trace) {
    const auto& ms = loop.samples;
    if (ms.size() < 2) {
        throw std::invalid_argument("winding_number: need at least 2 samples");
    }
    if (ms.front().mat.max_abs_diff(ms.back().mat) > 1e-6) {
        throw std::invalid_argument("winding_number: loop endpoints differ");
    }
    double prev = polar_angle(ms[0].mat);
    double unwrapped = prev;
    if (trace) *trace << 0 << "," << unwrapped << "\n";
    double total = 0.0;
    for (std::size_t k = 1; k < ms.size(); ++k) {
        const double theta = polar_angle(ms[k].mat);
        double d = theta - prev;
        while (d > kPi) d -= 2.0 * kPi;
        while (d <= -kPi) d += 2.0 * kPi;
        if (std::abs(d) >= kPi / 2.0) {
            std::ostringstream msg;
            msg << "winding_number: polar angle jump " << d << " at sample " << k
                << " exceeds pi/2; sample the loop more finely";
            throw UndersamplingError(msg.str());
        }
        total += d;
        unwrapped += d;
        prev = theta;
        if (trace) *trace << k << "," << unwrapped << "\n";
    }
    const double turns = total / (2.0 * kPi);
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) > 0.05) {
        throw ResolutionError("winding_number: net turns not near an integer", turns);
    }
    return int(nearest);
}

int normal_loop_winding(const MapFamily& family, const SpherePoint& x, int n_samples,
                        double fd_step, std::ostream* trace) {
    if (n_samples < 8) {
        throw std::invalid_argument("normal_loop_winding: need at least 8 samples");
    }
    MatrixLoop loop;
    loop.samples.reserve(std::size_t(n_samples) + 1);
    for (int k = 0; k <= n_samples; ++k) {
        const double t = double(k) / double(n_samples);
        loop.samples.push_back(verify::normal_action(family(t), x, fd_step));
    }
    return winding_number(loop, trace);
}

}  // namespace twistlab::topo
