#include "twistlab/suite.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace twistlab::suite {

namespace {

using compact::CotangentPoint;
using geom::Mat2;
using geom::ProductPoint;
using geom::SpherePoint;
using geom::Vec3;
using maps::homotopy_h;
using maps::loop_lambda;
using maps::swap_iota;
using maps::tau;
using verify::SampleStream;

constexpr double kPi = std::numbers::pi;

// |x+y| = sqrt(2 + 2<x,y>); band limits expressed through c = <x,y>.
constexpr double kSwapRegionHi = -0.875;   // s <= 1/2
constexpr double kIdentityRegionLo = -0.5; // s >= 1
constexpr double kMomentGuardLo = -0.995;  // s >= 0.1
constexpr double kOffDiagonalHi = 0.995;   // keeps |x-y| >= 0.1

VerificationReport exactness_report(std::string name, std::size_t samples,
                                    std::uint64_t seed, double worst, double mean,
                                    double tol) {
    return VerificationReport::make(std::move(name), samples, seed, 0.0, worst, mean, tol);
}

bool same_bits(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
}
bool same_bits(const ProductPoint& a, const ProductPoint& b) {
    return same_bits(a.x.coords(), b.x.coords()) && same_bits(a.y.coords(), b.y.coords());
}

// --- tau ------------------------------------------------------------------

VerificationReport run_tau_symplectic(const SuiteConfig& cfg) {
    return verify::symplectic_report(tau, "tau-symplectic", cfg.samples, cfg.seed,
                                     cfg.fd_step, cfg.tol);
}

VerificationReport run_tau_swap_region(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.banded_product_point(i, -1.0, kSwapRegionHi);
        const double r = same_bits(tau(p), swap_iota(p)) ? 0.0 : 1.0;
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("tau-swap-region", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 0.0);
}

VerificationReport run_tau_identity_region(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.banded_product_point(i, kIdentityRegionLo, 1.0);
        const double r = same_bits(tau(p), p) ? 0.0 : 1.0;
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("tau-identity-region", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 0.0);
}

VerificationReport run_tau_seam(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.banded_product_point(i, kSwapRegionHi, kSwapRegionHi);
        const double s = (p.x.coords() + p.y.coords()).norm();
        const ProductPoint swap_branch = swap_iota(p);
        const ProductPoint rot_branch = maps::rho(maps::profile_r(s), p);
        const double r = geom::distance(swap_branch, rot_branch);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("tau-seam", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-12);
}

VerificationReport run_tau_fixes_diagonal(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const SpherePoint x = st.sphere_point(i, 0);
        const ProductPoint p{x, x};
        const double r = geom::distance(tau(p), p);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("tau-fixes-diagonal", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-12);
}

VerificationReport run_tau_normal_trivial(const SuiteConfig& cfg) {
    constexpr std::size_t kBasePoints = 100;
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < kBasePoints; ++i) {
        const SpherePoint x = st.sphere_point(i, 0);
        const Mat2 m = verify::normal_action(tau, x, cfg.fd_step).mat;
        const double r = m.max_abs_diff(Mat2::identity());
        worst = std::max(worst, r);
        sum += r;
    }
    return VerificationReport::make("tau-normal-trivial", kBasePoints, cfg.seed,
                                    cfg.fd_step, worst, sum / double(kBasePoints),
                                    cfg.tol);
}

// --- moment map -------------------------------------------------------------

VerificationReport run_moment_map(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.banded_product_point(i, kMomentGuardLo, 1.0);
        const double r = verify::hamiltonian_residual(p, cfg.fd_step);
        worst = std::max(worst, r);
        sum += r;
    }
    return VerificationReport::make("moment-map", cfg.samples, cfg.seed, cfg.fd_step,
                                    worst, sum / double(cfg.samples), cfg.tol);
}

// --- homotopy ---------------------------------------------------------------

VerificationReport run_homotopy_endpoint_zero(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.product_point(i);
        const double r = geom::distance(homotopy_h(0.0, p), p);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("homotopy-endpoint-zero", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-12);
}

VerificationReport run_homotopy_endpoint_one(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.product_point(i);
        const double r = geom::distance(homotopy_h(1.0, p), tau(tau(p)));
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("homotopy-endpoint-one", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-9);
}

VerificationReport run_homotopy_symplectic(const SuiteConfig& cfg) {
    double worst = 0.0, mean_sum = 0.0;
    int count = 0;
    for (int k = 0; k <= 10; ++k) {
        const double s = double(k) / 10.0;
        const auto rep = verify::symplectic_report(
            [s](const ProductPoint& p) { return homotopy_h(s, p); }, "h_s", cfg.samples,
            cfg.seed, cfg.fd_step, cfg.tol);
        worst = std::max(worst, rep.max_residual);
        mean_sum += rep.mean_residual;
        ++count;
    }
    return VerificationReport::make("homotopy-symplectic", cfg.samples * count, cfg.seed,
                                    cfg.fd_step, worst, mean_sum / double(count), cfg.tol);
}

VerificationReport run_h_normal_rotation(const SuiteConfig& cfg) {
    constexpr std::size_t kBasePoints = 20;
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    int count = 0;
    for (const double s : {0.25, 0.5, 0.75}) {
        const auto map = [s](const ProductPoint& p) { return homotopy_h(s, p); };
        const Mat2 expected = Mat2::rotation(2.0 * kPi * s);
        for (std::uint64_t i = 0; i < kBasePoints; ++i) {
            const SpherePoint x = st.sphere_point(i, 0);
            const double r =
                verify::normal_action(map, x, cfg.fd_step).mat.max_abs_diff(expected);
            worst = std::max(worst, r);
            sum += r;
            ++count;
        }
    }
    return VerificationReport::make("h-normal-rotation", std::size_t(count), cfg.seed,
                                    cfg.fd_step, worst, sum / double(count),
                                    10.0 * cfg.tol);
}

VerificationReport run_h_normal_winding(const SuiteConfig& cfg) {
    constexpr std::size_t kBasePoints = 5;
    const SampleStream st(cfg.seed);
    const topo::MapFamily fam = [](double s) {
        return verify::ProductMap(
            [s](const ProductPoint& p) { return homotopy_h(s, p); });
    };
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < kBasePoints; ++i) {
        const int w = topo::normal_loop_winding(fam, st.sphere_point(i, 0), 64, cfg.fd_step);
        const double r = std::abs(double(w) - 1.0);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("h-normal-winding", kBasePoints, cfg.seed, worst,
                            sum / double(kBasePoints), 0.0);
}

// --- lambda -----------------------------------------------------------------

VerificationReport run_lambda_endpoints(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.product_point(i);
        const double r = std::max(geom::distance(loop_lambda(0.0, p), p),
                                  geom::distance(loop_lambda(1.0, p), p));
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("lambda-endpoints", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-12);
}

VerificationReport run_lambda_fixes_diagonal(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const SpherePoint x = st.sphere_point(i, 0);
        const ProductPoint p{x, x};
        const double t = st.uniform(i, 8);
        const double r = geom::distance(loop_lambda(t, p), p);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("lambda-fixes-diagonal", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-12);
}

VerificationReport run_lambda_normal_winding(const SuiteConfig& cfg) {
    constexpr std::size_t kBasePoints = 3;
    const SampleStream st(cfg.seed);
    const topo::MapFamily fam = [](double t) {
        return verify::ProductMap(
            [t](const ProductPoint& p) { return loop_lambda(t, p); });
    };
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < kBasePoints; ++i) {
        const int w = topo::normal_loop_winding(fam, st.sphere_point(i, 0), 64, cfg.fd_step);
        const double r = std::abs(std::abs(double(w)) - 1.0);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("lambda-normal-winding", kBasePoints, cfg.seed, worst,
                            sum / double(kBasePoints), 0.0);
}

VerificationReport run_lambda_not_symplectic(const SuiteConfig& cfg) {
    const auto inner = verify::symplectic_report(
        [](const ProductPoint& p) { return loop_lambda(0.25, p); }, "lambda_0.25",
        cfg.samples, cfg.seed, cfg.fd_step, cfg.tol);
    const double r = inner.pass ? 1.0 : 0.0;  // control passes iff the report fails
    return exactness_report("lambda-not-symplectic", cfg.samples, cfg.seed, r, r, 0.0);
}

// --- homology ---------------------------------------------------------------

topo::HomologyMatrix expected_swap_matrix() {
    topo::HomologyMatrix m;
    m.m[0][1] = m.m[1][0] = 1;
    return m;
}

VerificationReport run_homology_action(const SuiteConfig& cfg) {
    const auto id_map = [](const ProductPoint& p) { return p; };
    const auto m_id = topo::homology_matrix(id_map, cfg.quad_nodes, cfg.fd_step);
    const auto m_iota = topo::homology_matrix(swap_iota, cfg.quad_nodes, cfg.fd_step);
    const auto m_tau = topo::homology_matrix(tau, cfg.quad_nodes, cfg.fd_step);
    const auto deviation = [](const topo::HomologyMatrix& got,
                              const topo::HomologyMatrix& want) {
        int d = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                d = std::max(d, std::abs(got.m[i][j] - want.m[i][j]));
        return double(d);
    };
    const double worst = std::max({deviation(m_id, topo::HomologyMatrix::identity()),
                                   deviation(m_iota, expected_swap_matrix()),
                                   deviation(m_tau, expected_swap_matrix())});
    return exactness_report("homology-action", std::size_t(cfg.quad_nodes), cfg.seed,
                            worst, worst, 0.0);
}

VerificationReport run_homology_integrality(const SuiteConfig& cfg) {
    const auto id_map = [](const ProductPoint& p) { return p; };
    double worst = 0.0;
    for (const auto& m : {topo::homology_matrix(id_map, cfg.quad_nodes, cfg.fd_step),
                          topo::homology_matrix(swap_iota, cfg.quad_nodes, cfg.fd_step),
                          topo::homology_matrix(tau, cfg.quad_nodes, cfg.fd_step)}) {
        worst = std::max(worst, m.max_rounding_error);
    }
    return exactness_report("homology-integrality", std::size_t(cfg.quad_nodes), cfg.seed,
                            worst, worst, 0.01);
}

VerificationReport run_homology_composition(const SuiteConfig& cfg) {
    const verify::ProductMap members[3] = {
        [](const ProductPoint& p) { return p; }, swap_iota, tau};
    topo::HomologyMatrix base[3];
    for (int k = 0; k < 3; ++k) {
        base[k] = topo::homology_matrix(members[k], cfg.quad_nodes, cfg.fd_step);
    }
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const verify::ProductMap composed = [&, a, b](const ProductPoint& p) {
                return members[a](members[b](p));
            };
            const auto m = topo::homology_matrix(composed, cfg.quad_nodes, cfg.fd_step);
            const auto want = base[a].mul(base[b]);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    worst = std::max(worst, std::abs(double(m.m[i][j] - want.m[i][j])));
        }
    }
    return exactness_report("homology-composition", std::size_t(cfg.quad_nodes), cfg.seed,
                            worst, worst, 0.0);
}

// --- compactification --------------------------------------------------------

VerificationReport run_compactify_pullback(const SuiteConfig& cfg) {
    const verify::ProductManifold pman;
    const verify::DiscBundleManifold dman;
    const SampleStream st(cfg.seed);
    std::vector<double> eta_vals, omega_vals;
    eta_vals.reserve(cfg.samples);
    omega_vals.reserve(cfg.samples);
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.banded_product_point(i, -1.0, kOffDiagonalHi);
        const auto a = verify::random_unit_tangent(pman, st, p, i, 6);
        const auto b = verify::random_unit_tangent(pman, st, p, i, 10);
        const CotangentPoint q = compact::phi(p);
        const auto push = [&](const verify::ProductManifold::Tangent& t) {
            const CotangentPoint fwd = compact::phi(pman.nudge(p, t, cfg.fd_step));
            const CotangentPoint bwd = compact::phi(pman.nudge(p, t, -cfg.fd_step));
            return dman.tangentialize(q, dman.quotient(fwd, bwd, cfg.fd_step));
        };
        eta_vals.push_back(dman.form(q, push(a), push(b)));
        omega_vals.push_back(pman.form(p, a, b));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < eta_vals.size(); ++i) {
        num += eta_vals[i] * omega_vals[i];
        den += omega_vals[i] * omega_vals[i];
    }
    const double c = den > 0.0 ? num / den : 0.0;
    double worst = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < eta_vals.size(); ++i) {
        const double r = std::abs(eta_vals[i] - c * omega_vals[i]) /
                         (1.0 + std::abs(omega_vals[i]));
        worst = std::max(worst, r);
        sum += r;
    }
    if (!(c > 0.0)) {
        worst = 1.0;  // the scale must be positive
    }
    return VerificationReport::make("compactify-pullback", cfg.samples, cfg.seed,
                                    cfg.fd_step, worst, sum / double(cfg.samples),
                                    100.0 * cfg.tol);
}

VerificationReport run_compactify_antidiagonal(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const SpherePoint x = st.sphere_point(i, 0);
        const CotangentPoint q = compact::phi({x, x.antipode()});
        const double r = std::max(geom::distance(q.base(), x), q.covector().norm());
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("compactify-antidiagonal", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-12);
}

VerificationReport run_compactify_roundtrip(const SuiteConfig& cfg) {
    const verify::DiscBundleManifold dman{0.001, 0.98};
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const ProductPoint p = st.banded_product_point(i, -1.0, kOffDiagonalHi);
        const double r1 = geom::distance(compact::phi_inv(compact::phi(p)), p);
        const CotangentPoint q = dman.sample(st, i);
        const double r2 = compact::distance(compact::phi(compact::phi_inv(q)), q);
        const double r = std::max(r1, r2);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("compactify-roundtrip", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-9);
}

VerificationReport run_twist_identity_region(const SuiteConfig& cfg) {
    const verify::DiscBundleManifold dman{0.501, 0.98};
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const CotangentPoint q = dman.sample(st, i);
        const double r = compact::distance(compact::conjugated_twist(q), q);
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("twist-identity-region", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-9);
}

VerificationReport run_twist_zero_section(const SuiteConfig& cfg) {
    const SampleStream st(cfg.seed);
    double worst = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const SpherePoint u = st.sphere_point(i, 0);
        const CotangentPoint q(u, Vec3{});
        const CotangentPoint t = compact::conjugated_twist(q);
        const double r = std::max(geom::distance(t.base(), u.antipode()),
                                  t.covector().norm());
        worst = std::max(worst, r);
        sum += r;
    }
    return exactness_report("twist-zero-section", cfg.samples, cfg.seed, worst,
                            sum / double(cfg.samples), 1e-9);
}

VerificationReport run_twist_eta_symplectic(const SuiteConfig& cfg) {
    return verify::symplectic_report_eta(compact::conjugated_twist, "twist-eta-symplectic",
                                         cfg.samples, cfg.seed, cfg.fd_step,
                                         10.0 * cfg.tol);
}

// --- FD sanity and determinism ------------------------------------------------

VerificationReport run_fd_convergence(const SuiteConfig& cfg) {
    const std::size_t n = std::min<std::size_t>(cfg.samples, 500);
    const double coarse = 1e-3;
    const auto rep1 = verify::symplectic_report(tau, "tau", n, cfg.seed, coarse, 1.0);
    const auto rep2 = verify::symplectic_report(tau, "tau", n, cfg.seed, coarse / 2.0, 1.0);
    const double ratio = rep1.max_residual / rep2.max_residual;
    const double r = ratio < 3.0 ? 3.0 - ratio : (ratio > 5.0 ? ratio - 5.0 : 0.0);
    // mean_residual carries the observed ratio, for the record.
    return VerificationReport::make("fd-convergence", n, cfg.seed, coarse, r, ratio, 0.0);
}

VerificationReport run_report_determinism(const SuiteConfig& cfg) {
    const std::size_t n = std::min<std::size_t>(cfg.samples, 200);
    const auto once = verify::symplectic_report(tau, "probe", n, cfg.seed, cfg.fd_step,
                                                cfg.tol);
    const auto twice = verify::symplectic_report(tau, "probe", n, cfg.seed, cfg.fd_step,
                                                 cfg.tol);
    const double r = once.to_json().dump() == twice.to_json().dump() ? 0.0 : 1.0;
    return exactness_report("report-determinism", n, cfg.seed, r, r, 0.0);
}

constexpr CheckDef kChecks[] = {
    {"tau-symplectic", "pullback of omega under the twist matches omega to FD accuracy",
     run_tau_symplectic},
    {"tau-swap-region", "twist equals the factor swap bit-exactly where |x+y| <= 1/2",
     run_tau_swap_region},
    {"tau-identity-region", "twist equals the identity bit-exactly where |x+y| >= 1",
     run_tau_identity_region},
    {"tau-seam", "swap and rotation branches agree on the seam |x+y| = 1/2",
     run_tau_seam},
    {"tau-fixes-diagonal", "twist fixes the diagonal pointwise", run_tau_fixes_diagonal},
    {"tau-normal-trivial",
     "twist acts trivially on the normal bundle of the diagonal (100 base points)",
     run_tau_normal_trivial},
    {"moment-map",
     "omega(v, X) = d mu(v) for the circle-action generator X and mu = -|x+y|",
     run_moment_map},
    {"homotopy-endpoint-zero", "h_0 is the identity", run_homotopy_endpoint_zero},
    {"homotopy-endpoint-one", "h_1 equals the squared twist", run_homotopy_endpoint_one},
    {"homotopy-symplectic", "h_s preserves omega for s = 0, 0.1, ..., 1",
     run_homotopy_symplectic},
    {"h-normal-rotation",
     "normal action of h_s is rotation by 2 pi s (s in {0.25, 0.5, 0.75}, 20 base points)",
     run_h_normal_rotation},
    {"h-normal-winding", "normal actions of (h_s) wind once around the diagonal",
     run_h_normal_winding},
    {"lambda-endpoints", "lambda_0 = lambda_1 = id", run_lambda_endpoints},
    {"lambda-fixes-diagonal", "lambda_t fixes the diagonal pointwise",
     run_lambda_fixes_diagonal},
    {"lambda-normal-winding", "normal actions of (lambda_t) wind once (|w| = 1)",
     run_lambda_normal_winding},
    {"lambda-not-symplectic",
     "negative control: lambda_0.25 must fail the symplecticity report",
     run_lambda_not_symplectic},
    {"homology-action", "H_2 action: id -> I; swap and twist -> [[0,1],[1,0]]",
     run_homology_action},
    {"homology-integrality",
     "degree quadrature lands within 0.01 of integers at the configured grid",
     run_homology_integrality},
    {"homology-composition", "homology matrices multiply over {id, iota, tau}",
     run_homology_composition},
    {"compactify-pullback",
     "phi pulls eta back to c * omega with fitted c > 0 (relative residual)",
     run_compactify_pullback},
    {"compactify-antidiagonal", "phi sends (x, -x) to the zero covector at x",
     run_compactify_antidiagonal},
    {"compactify-roundtrip", "phi and phi_inv invert each other", run_compactify_roundtrip},
    {"twist-identity-region",
     "conjugated twist is the identity where |covector| > s f(s) at s = 1",
     run_twist_identity_region},
    {"twist-zero-section",
     "conjugated twist restricts to the antipodal map on the zero section",
     run_twist_zero_section},
    {"twist-eta-symplectic", "conjugated twist preserves eta", run_twist_eta_symplectic},
    {"fd-convergence",
     "halving the FD step cuts twist pullback residuals by ~4 (ratio in [3,5], base step 1e-3)",
     run_fd_convergence},
    {"report-determinism", "identical seeds give byte-identical reports",
     run_report_determinism},
};

}  // namespace

void SuiteConfig::validate() const {
    if (samples < 1) {
        throw std::invalid_argument("config: samples must be >= 1");
    }
    if (!(fd_step > 0.0) || fd_step > 1e-2) {
        throw std::invalid_argument("config: fd-step must lie in (0, 1e-2]");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("config: tol must be positive");
    }
    if (quad_nodes < 32) {
        throw std::invalid_argument("config: quad-nodes must be >= 32");
    }
}

std::span<const CheckDef> check_registry() {
    return kChecks;
}

const CheckDef* find_check(std::string_view name) {
    for (const auto& c : kChecks) {
        if (name == c.name) return &c;
    }
    return nullptr;
}

const std::vector<NamedMap>& map_registry() {
    static const std::vector<NamedMap> maps_list = {
        {"id", "identity map", [](const ProductPoint& p) { return p; }},
        {"iota", "factor swap", swap_iota},
        {"tau", "generalized Dehn twist", tau},
        {"tau-inv", "inverse twist", maps::tau_inv},
        {"tau2", "squared twist", [](const ProductPoint& p) { return tau(tau(p)); }},
    };
    return maps_list;
}

const NamedMap* find_map(std::string_view name) {
    for (const auto& m : map_registry()) {
        if (name == m.name) return &m;
    }
    return nullptr;
}

const std::vector<NamedFamily>& family_registry() {
    static const std::vector<NamedFamily> families = {
        {"h", "homotopy from the identity to the squared twist",
         [](double s) {
             return verify::ProductMap(
                 [s](const ProductPoint& p) { return homotopy_h(s, p); });
         }},
        {"lambda", "first factor rotated about the second by 2 pi t",
         [](double t) {
             return verify::ProductMap(
                 [t](const ProductPoint& p) { return loop_lambda(t, p); });
         }},
        {"const-id", "constant identity family",
         [](double) {
             return verify::ProductMap([](const ProductPoint& p) { return p; });
         }},
    };
    return families;
}

const NamedFamily* find_family(std::string_view name) {
    for (const auto& f : family_registry()) {
        if (name == f.name) return &f;
    }
    return nullptr;
}

nlohmann::ordered_json suite_json(const std::vector<VerificationReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::size_t passed = 0;
    for (const auto& r : reports) {
        arr.push_back(r.to_json());
        if (r.pass) ++passed;
    }
    return nlohmann::ordered_json{
        {"schema", 1},
        {"reports", arr},
        {"summary",
         {{"total", reports.size()}, {"passed", passed}, {"failed", reports.size() - passed}}}};
}

std::string suite_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << VerificationReport::csv_header() << "\n";
    for (const auto& r : reports) {
        out << r.csv_row() << "\n";
    }
    return out.str();
}

}  // namespace twistlab::suite
