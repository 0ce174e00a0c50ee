#include "twistlab/compactify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace twistlab::compact {

namespace {
constexpr double kDiagonalGuard = 1e-7;  // |x-y| below this counts as diagonal
constexpr double kEtaTangentTol = 1e-8;
constexpr const char* kCsvMethod = "rk4 g'=g/s, g(2)=1; f=g/s; monotone-cubic";
}  // namespace

CotangentPoint::CotangentPoint(const SpherePoint& base, const Vec3& covector)
    : base_(base), covector_(covector) {
    const double n = covector_.norm();
    if (!(n < 1.0)) {
        throw std::domain_error("CotangentPoint: |covector| must be < 1");
    }
    if (std::abs(covector_.dot(base_.coords())) > kCovectorTangentTol * std::max(1.0, n)) {
        throw std::domain_error("CotangentPoint: covector not orthogonal to base");
    }
}

double eta(const CotangentPoint& q, const CotangentTangent& a, const CotangentTangent& b) {
    const Vec3& u = q.base().coords();
    const Vec3& p = q.covector();
    for (const CotangentTangent* t : {&a, &b}) {
        const double scale = std::max({1.0, t->du.norm(), t->dp.norm()});
        if (std::abs(u.dot(t->du)) > kEtaTangentTol * scale ||
            std::abs(u.dot(t->dp) + t->du.dot(p)) > kEtaTangentTol * scale) {
            throw std::domain_error("eta: input is not tangent to T*S^2 at q");
        }
    }
    return eta_raw(a, b);
}

// ---------------------------------------------------------------------------
// CompactifyProfile
// ---------------------------------------------------------------------------

CompactifyProfile CompactifyProfile::solve(std::size_t nodes) {
    if (nodes < 8) {
        throw std::invalid_argument("CompactifyProfile::solve: need at least 8 nodes");
    }
    CompactifyProfile prof;
    prof.s_.resize(nodes);
    prof.f_.resize(nodes);
    const double ds = 2.0 / double(nodes - 1);
    for (std::size_t k = 0; k < nodes; ++k) {
        prof.s_[k] = ds * double(k);
    }
    prof.s_.back() = 2.0;

    // g' = g/s integrated from g(2) = 1 down to the first positive node.
    const auto rhs = [](double s, double g) { return g / s; };
    std::vector<double> g(nodes, 0.0);
    g[nodes - 1] = 1.0;
    for (std::size_t k = nodes - 1; k > 1; --k) {
        const double s0 = prof.s_[k];
        const double h = prof.s_[k - 1] - s0;  // negative
        const double g0 = g[k];
        const double k1 = rhs(s0, g0);
        const double k2 = rhs(s0 + h / 2, g0 + h / 2 * k1);
        const double k3 = rhs(s0 + h / 2, g0 + h / 2 * k2);
        const double k4 = rhs(s0 + h, g0 + h * k3);
        g[k - 1] = g0 + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    for (std::size_t k = 1; k < nodes; ++k) {
        prof.f_[k] = g[k] / prof.s_[k];
    }
    prof.f_[0] = prof.f_[1];  // continuous limit of g(s)/s at s = 0

    prof.fit_slopes();
    prof.validate();
    return prof;
}

void CompactifyProfile::fit_slopes() {
    // Fritsch-Carlson monotone cubic slopes.
    const std::size_t n = s_.size();
    d_.assign(n, 0.0);
    std::vector<double> sec(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        sec[k] = (f_[k + 1] - f_[k]) / (s_[k + 1] - s_[k]);
    }
    d_[0] = sec[0];
    d_[n - 1] = sec[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        d_[k] = (sec[k - 1] + sec[k]) / 2.0;
        if (sec[k - 1] * sec[k] <= 0.0) d_[k] = 0.0;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sec[k] == 0.0) {
            d_[k] = d_[k + 1] = 0.0;
            continue;
        }
        const double alpha = d_[k] / sec[k];
        const double beta = d_[k + 1] / sec[k];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double t = 3.0 / std::sqrt(r2);
            d_[k] = t * alpha * sec[k];
            d_[k + 1] = t * beta * sec[k];
        }
    }
}

void CompactifyProfile::validate() const {
    const std::size_t n = s_.size();
    std::ostringstream err;
    if (std::abs(s_.back() * f_.back() - 1.0) > 1e-9) {
        err << "boundary condition s*f(s) -> 1 violated: " << s_.back() * f_.back();
        throw std::runtime_error("CompactifyProfile: " + err.str());
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!(f_[k] > 0.0)) {
            err << "f <= 0 at node " << k;
            throw std::runtime_error("CompactifyProfile: " + err.str());
        }
        if (k > 0 && !(s_[k] * f_[k] > s_[k - 1] * f_[k - 1])) {
            err << "s*f(s) not strictly increasing at node " << k;
            throw std::runtime_error("CompactifyProfile: " + err.str());
        }
    }
    // ODE residual on the table: centered dg/ds against g/s.
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double dg = (s_[k + 1] * f_[k + 1] - s_[k - 1] * f_[k - 1]) /
                          (s_[k + 1] - s_[k - 1]);
        worst = std::max(worst, std::abs(dg - f_[k]));
    }
    if (worst > 1e-6) {
        err << "ODE residual " << worst << " above 1e-6";
        throw std::runtime_error("CompactifyProfile: " + err.str());
    }
}

namespace {
// Hermite cubic on one interval; t in [0,1].
double hermite(double t, double f0, double f1, double m0, double m1, double h) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * m0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * m1;
}
double hermite_deriv(double t, double f0, double f1, double m0, double m1, double h) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * h * m0 +
            (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * h * m1) / h;
}
}  // namespace

double CompactifyProfile::f(double s) const {
    if (s <= s_.front()) return f_.front();
    if (s >= s_.back()) return f_.back();
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    const std::size_t k = std::size_t(it - s_.begin()) - 1;
    const double h = s_[k + 1] - s_[k];
    return hermite((s - s_[k]) / h, f_[k], f_[k + 1], d_[k], d_[k + 1], h);
}

double CompactifyProfile::df(double s) const {
    if (s <= s_.front() || s >= s_.back()) return 0.0;
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    const std::size_t k = std::size_t(it - s_.begin()) - 1;
    const double h = s_[k + 1] - s_[k];
    return hermite_deriv((s - s_[k]) / h, f_[k], f_[k + 1], d_[k], d_[k + 1], h);
}

double CompactifyProfile::invert_norm(double nu) const {
    if (!(nu >= 0.0 && nu < 1.0)) {
        throw std::domain_error("invert_norm: nu must lie in [0, 1)");
    }
    double lo = 0.0, hi = 2.0;
    for (int i = 0; i < 50; ++i) {
        const double mid = (lo + hi) / 2.0;
        (norm_map(mid) < nu ? lo : hi) = mid;
    }
    double s = (lo + hi) / 2.0;
    // One Newton polish; g'(s) = f + s f' is bounded away from 0.
    const double gp = f(s) + s * df(s);
    if (gp > 1e-8) {
        s -= (norm_map(s) - nu) / gp;
        s = std::clamp(s, 0.0, 2.0);
    }
    return s;
}

void CompactifyProfile::write_csv(std::ostream& out) const {
    char buf[80];
    out << "# compactify profile table\n";
    out << "# nodes: " << s_.size() << "\n";
    out << "# method: " << kCsvMethod << "\n";
    out << "# columns: s,f\n";
    for (std::size_t k = 0; k < s_.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s_[k], f_[k]);
        out << buf;
    }
}

CompactifyProfile CompactifyProfile::read_csv(std::istream& in) {
    CompactifyProfile prof;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        double s = 0.0, f = 0.0;
        if (std::sscanf(line.c_str(), "%lg,%lg", &s, &f) != 2) {
            throw std::runtime_error("CompactifyProfile::read_csv: malformed row: " + line);
        }
        prof.s_.push_back(s);
        prof.f_.push_back(f);
    }
    if (prof.s_.size() < 8) {
        throw std::runtime_error("CompactifyProfile::read_csv: too few rows");
    }
    prof.fit_slopes();
    prof.validate();
    return prof;
}

const CompactifyProfile& profile_f() {
    static const CompactifyProfile table = CompactifyProfile::solve();
    return table;
}

// ---------------------------------------------------------------------------
// Identification and the conjugated twist
// ---------------------------------------------------------------------------

CotangentPoint phi(const ProductPoint& p) {
    const Vec3 diff = p.x.coords() - p.y.coords();
    const double dn = diff.norm();
    if (dn < kDiagonalGuard) {
        throw std::domain_error("phi: undefined on (or numerically at) the diagonal");
    }
    const double s = (p.x.coords() + p.y.coords()).norm();
    // covector = s f(s) * unit(x cross y), in the form smooth through s = 0.
    const Vec3 cov = p.x.coords().cross(p.y.coords()) * (2.0 * profile_f().f(s) / dn);
    return CotangentPoint(SpherePoint(diff), cov);
}

ProductPoint phi_inv(const CotangentPoint& q) {
    const double nu = q.covector().norm();
    if (nu < 1e-14) {
        return {q.base(), q.base().antipode()};
    }
    const double s = profile_f().invert_norm(nu);
    const Vec3 chat = q.covector() / nu;
    const Vec3 axis = chat.cross(q.base().coords());     // direction of x+y
    const Vec3 mid = axis * (s / 2.0);                   // (x+y)/2
    const Vec3 offset = q.base().coords() *
                        (std::sqrt(std::max(0.0, 4.0 - s * s)) / 2.0);  // (x-y)/2
    return {SpherePoint(mid + offset), SpherePoint(mid - offset)};
}

CotangentPoint conjugated_twist(const CotangentPoint& q) {
    return phi(maps::tau(phi_inv(q)));
}

// ---------------------------------------------------------------------------
// Charts and frames on T*S^2
// ---------------------------------------------------------------------------

std::array<CotangentTangent, 4> cotangent_frame(const CotangentPoint& q) {
    const geom::OrientedFrame fr = geom::tangent_frame(q.base());
    const Vec3& u = q.base().coords();
    const Vec3& p = q.covector();
    const Vec3 e1 = fr.e1().vec(), e2 = fr.e2().vec();
    return {CotangentTangent{e1, -u * e1.dot(p)},
            CotangentTangent{e2, -u * e2.dot(p)},
            CotangentTangent{Vec3{}, e1},
            CotangentTangent{Vec3{}, e2}};
}

CotangentPoint cotangent_move(const CotangentPoint& q, const std::array<double, 4>& c) {
    if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0) {
        return q;
    }
    const geom::OrientedFrame fr = geom::tangent_frame(q.base());
    const Vec3 e1 = fr.e1().vec(), e2 = fr.e2().vec();
    const SpherePoint moved = geom::retract(q.base(), e1 * c[0] + e2 * c[1]);
    const Vec3 shifted = q.covector() + e1 * c[2] + e2 * c[3];
    const Vec3& m = moved.coords();
    return CotangentPoint(moved, shifted - m * shifted.dot(m));
}

std::array<double, 4> cotangent_coords(const CotangentPoint& ref, const CotangentPoint& r) {
    const geom::OrientedFrame fr = geom::tangent_frame(ref.base());
    const Vec3 e1 = fr.e1().vec(), e2 = fr.e2().vec();
    const Vec3 w = geom::retract_inverse(ref.base(), r.base());
    const Vec3 dp = r.covector() - ref.covector();
    return {w.dot(e1), w.dot(e2), dp.dot(e1), dp.dot(e2)};
}

double eta_closedness_residual(const CotangentPoint& q, double step) {
    // Pullback matrix G_jk(c) = eta(d_j Psi, d_k Psi) at chart offset c,
    // partials of Psi by inner central differences.
    const auto pullback_entry = [&](const std::array<double, 4>& c, int j, int k) {
        auto partial = [&](int dir) {
            std::array<double, 4> cp = c, cm = c;
            cp[dir] += step;
            cm[dir] -= step;
            const CotangentPoint qp = cotangent_move(q, cp);
            const CotangentPoint qm = cotangent_move(q, cm);
            return CotangentTangent{
                (qp.base().coords() - qm.base().coords()) / (2.0 * step),
                (qp.covector() - qm.covector()) / (2.0 * step)};
        };
        return eta_raw(partial(j), partial(k));
    };
    const auto dG = [&](int i, int j, int k) {
        std::array<double, 4> cp{}, cm{};
        cp[i] += step;
        cm[i] -= step;
        return (pullback_entry(cp, j, k) - pullback_entry(cm, j, k)) / (2.0 * step);
    };
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                worst = std::max(worst, std::abs(dG(i, j, k) - dG(j, i, k) + dG(k, i, j)));
    return worst;
}

}  // namespace twistlab::compact
