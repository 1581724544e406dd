#include "ghostlight/correlator.hpp"

#include "ghostlight/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ghostlight {

namespace {

constexpr cx kI{0.0, 1.0};

cx inv_sqrt(cx z) { return 1.0 / std::sqrt(z); }

} // namespace

void EngineConfig::validate() const {
    if (n_aperture < 16) throw config_error("engine n_aperture must be >= 16");
    if (n_source < 64) throw config_error("engine n_source must be >= 64");
    if (n_diff != 0 && n_diff < 16)
        throw config_error("engine n_diff must be >= 16 (or 0 for n_source)");
    if (!(source_extent >= 3.0) || !(diff_extent >= 3.0))
        throw config_error("engine extents must be >= 3");
    if (!(rtol > 0.0)) throw config_error("engine rtol must be positive");
}

cx gaussian_integral(const ComplexQuadraticForm& q) {
    const double pi = std::numbers::pi;
    if (q.n == 1) {
        if (!(q.m11.real() > 0.0))
            throw quadratic_form_domain_error("Re(M) not positive definite (n=1)");
        return std::sqrt(pi) * inv_sqrt(q.m11) *
               std::exp(0.25 * q.b1 * q.b1 / q.m11 + q.c0);
    }
    if (q.n != 2)
        throw quadratic_form_domain_error("quadratic forms limited to n <= 2");
    // Leading minors of Re(M).
    const double r11 = q.m11.real(), r12 = q.m12.real(), r22 = q.m22.real();
    if (!(r11 > 0.0) || !(r11 * r22 - r12 * r12 > 0.0))
        throw quadratic_form_domain_error("Re(M) not positive definite (n=2)");
    const cx det = q.m11 * q.m22 - q.m12 * q.m12;
    if (!(det.real() > 0.0))
        throw branch_error("Re(det M) <= 0: principal square root invalid");
    // b^T M^-1 b via the adjugate.
    const cx quad =
        (q.b1 * q.b1 * q.m22 - 2.0 * q.b1 * q.b2 * q.m12 + q.b2 * q.b2 * q.m11) / det;
    return pi * inv_sqrt(det) * std::exp(0.25 * quad + q.c0);
}

cx fresnel_kernel(const WaveContext& ctx, double L, double x, double y) {
    if (!(L > 0.0))
        throw invalid_geometry_error("fresnel kernel needs positive distance");
    const double k = ctx.wavenumber;
    const double dxy = x - y;
    return inv_sqrt(kI * ctx.wavelength * L) *
           std::exp(kI * (k * L + k * dxy * dxy / (2.0 * L)));
}

cx collins_kernel(const WaveContext& ctx, const RayTransferMatrix& m,
                  double x, double u) {
    if (m.b == 0.0)
        throw degenerate_kernel_error(
            "collins kernel degenerate at b = 0; use the effective image matrix "
            "formulation instead");
    const double k = ctx.wavenumber;
    return inv_sqrt(kI * ctx.wavelength * m.b) *
           std::exp(kI * (k * m.path_length +
                          k * (m.a * x * x - 2.0 * x * u + m.d * u * u) / (2.0 * m.b)));
}

namespace {

// Analytic integral of exp(-(p+beta)x1^2 - (q+beta)x2^2 + 2 beta x1 x2
//                         + b1 x1 + b2 x2 + c0) over the plane.
// Same identity as gaussian_integral but with det = pq + beta(p+q) expanded
// so the beta^2 terms cancel algebraically; at sigma_g = 1e-5 mm beta is
// ~5e9 and the generic determinant loses ~12 digits.
cx schell_gaussian_integral(cx p, cx q, double beta, cx b1, cx b2, cx c0) {
    const cx det = p * q + beta * (p + q);
    if (!(det.real() > 0.0))
        throw branch_error("Re(det M) <= 0 in source integral");
    const cx quad =
        (b1 * b1 * (q + beta) + 2.0 * b1 * b2 * beta + b2 * b2 * (p + beta)) / det;
    return std::numbers::pi * inv_sqrt(det) * std::exp(0.25 * quad + c0);
}

struct PathFactors {
    RayTransferMatrix m2;
    double k;
    double alpha;  // 1/(4 sigma_I^2)
    double beta;   // 1/(2 sigma_g^2)
};

PathFactors make_factors(const PathGeometry& geom, const WaveContext& ctx,
                         const GaussianSchellSource& src) {
    geom.validate();
    src.validate();
    return {path2_matrix(geom), ctx.wavenumber,
            1.0 / (4.0 * src.sigma_I * src.sigma_I),
            1.0 / (2.0 * src.sigma_g * src.sigma_g)};
}

cx cross_correlation_reduced(double u1, double u2, const PathGeometry& geom,
                             const WaveContext& ctx, const GaussianSchellSource& src,
                             const PiecewiseAperture& obj, const EngineConfig& cfg) {
    const PathFactors pf = make_factors(geom, ctx, src);
    const RayTransferMatrix& m2 = pf.m2;
    if (m2.b == 0.0)
        throw degenerate_kernel_error(
            "path-2 matrix has b = 0; formulate with the effective image matrix");
    const double k = pf.k;
    // Quadratic coefficients: x1 carries conj(fresnel(z1)), x2 carries
    // collins(path 2).
    const cx p = pf.alpha + kI * k / (2.0 * geom.z1);
    const cx q = pf.alpha - kI * k * m2.a / (2.0 * m2.b);
    const cx b2 = -kI * k * u2 / m2.b;
    const cx pref = std::conj(inv_sqrt(kI * ctx.wavelength * geom.z1)) *
                    inv_sqrt(kI * ctx.wavelength * m2.b);
    const cx phase = kI * (k * m2.path_length - k * geom.z1 +
                           k * m2.d * u2 * u2 / (2.0 * m2.b));
    const auto& rule = gauss_legendre(cfg.n_aperture);
    std::vector<double> v, w;
    cx total = 0.0;
    for (const auto& iv : obj.support_intervals()) {
        rule.mapped(iv.lo, iv.hi, v, w);
        cx acc = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const cx b1 = kI * k * v[i] / geom.z1;
            const cx c0 = phase - kI * k * v[i] * v[i] / (2.0 * geom.z1);
            acc += w[i] * std::conj(fresnel_kernel(ctx, geom.z2, v[i], u1)) *
                   schell_gaussian_integral(p, q, pf.beta, b1, b2, c0);
        }
        total += std::conj(iv.amplitude) * acc;
    }
    return total * pref;
}

double mean_intensity_path1_reduced(double u1, const PathGeometry& geom,
                                    const WaveContext& ctx,
                                    const GaussianSchellSource& src,
                                    const PiecewiseAperture& obj,
                                    const EngineConfig& cfg) {
    const PathFactors pf = make_factors(geom, ctx, src);
    const double k = pf.k;
    const cx p = pf.alpha + kI * k / (2.0 * geom.z1);
    const cx q = pf.alpha - kI * k / (2.0 * geom.z1);
    const double pref = 1.0 / (ctx.wavelength * geom.z1);
    const auto& rule = gauss_legendre(cfg.n_aperture);
    std::vector<double> v, wv, vp, wvp;
    cx total = 0.0;
    for (const auto& ivA : obj.support_intervals()) {
        rule.mapped(ivA.lo, ivA.hi, v, wv);
        for (const auto& ivB : obj.support_intervals()) {
            rule.mapped(ivB.lo, ivB.hi, vp, wvp);
            cx acc = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const cx b1 = kI * k * v[i] / geom.z1;
                const cx f2c = std::conj(fresnel_kernel(ctx, geom.z2, v[i], u1));
                for (std::size_t j = 0; j < vp.size(); ++j) {
                    const cx b2 = -kI * k * vp[j] / geom.z1;
                    const cx c0 = kI * k * (vp[j] * vp[j] - v[i] * v[i]) /
                                  (2.0 * geom.z1);
                    acc += wv[i] * wvp[j] * f2c *
                           fresnel_kernel(ctx, geom.z2, vp[j], u1) *
                           schell_gaussian_integral(p, q, pf.beta, b1, b2, c0);
                }
            }
            total += std::conj(ivA.amplitude) * ivB.amplitude * acc;
        }
    }
    const cx val = total * pref;
    if (std::abs(val.imag()) > 1e-9 * std::max(std::abs(val.real()), 1e-300) &&
        std::abs(val.imag()) > 1e-300)
        throw accuracy_error("path-1 intensity has non-negligible imaginary part");
    return std::max(val.real(), 0.0);
}

double mean_intensity_path2_closed(double u2, const PathGeometry& geom,
                                   const WaveContext& ctx,
                                   const GaussianSchellSource& src) {
    const PathFactors pf = make_factors(geom, ctx, src);
    const RayTransferMatrix& m2 = pf.m2;
    if (m2.b == 0.0)
        throw degenerate_kernel_error("path-2 matrix has b = 0");
    const double k = pf.k;
    const cx p = pf.alpha + kI * k * m2.a / (2.0 * m2.b);
    const cx q = pf.alpha - kI * k * m2.a / (2.0 * m2.b);
    const cx b1 = kI * k * u2 / m2.b;
    const cx b2 = -kI * k * u2 / m2.b;
    const cx val = schell_gaussian_integral(p, q, pf.beta, b1, b2, 0.0) /
                   (ctx.wavelength * std::abs(m2.b));
    return std::max(val.real(), 0.0);
}

// ---- brute engine: rotated source coordinates s = (x1+x2)/2, t = x1-x2 ----

struct BruteGrid {
    std::vector<double> s, ws, t, wt;
    // Source correlation over the (s, t) grid, envelope only.
    std::vector<double> env;  // size s*t, row-major in s
};

BruteGrid make_brute_grid(const GaussianSchellSource& src, const EngineConfig& cfg) {
    BruteGrid g;
    gauss_legendre(cfg.n_source)
        .mapped(-cfg.source_extent * src.sigma_I, cfg.source_extent * src.sigma_I,
                g.s, g.ws);
    gauss_legendre(cfg.n_diff > 0 ? cfg.n_diff : cfg.n_source)
        .mapped(-cfg.diff_extent * src.sigma_g, cfg.diff_extent * src.sigma_g,
                g.t, g.wt);
    g.env.resize(g.s.size() * g.t.size());
    for (std::size_t i = 0; i < g.s.size(); ++i)
        for (std::size_t j = 0; j < g.t.size(); ++j) {
            const double x1 = g.s[i] + 0.5 * g.t[j];
            const double x2 = g.s[i] - 0.5 * g.t[j];
            g.env[i * g.t.size() + j] =
                g.ws[i] * g.wt[j] * gsm_correlation(src, x1, x2);
        }
    return g;
}

cx cross_correlation_brute(double u1, double u2, const PathGeometry& geom,
                           const WaveContext& ctx, const GaussianSchellSource& src,
                           const PiecewiseAperture& obj, const EngineConfig& cfg) {
    geom.validate();
    src.validate();
    const RayTransferMatrix m2 = path2_matrix(geom);
    const BruteGrid g = make_brute_grid(src, cfg);
    const std::size_t nt = g.t.size();
    // h2 factor depends on x2 only; precompute per grid cell.
    std::vector<cx> h2(g.s.size() * nt);
    for (std::size_t i = 0; i < g.s.size(); ++i)
        for (std::size_t j = 0; j < nt; ++j)
            h2[i * nt + j] =
                collins_kernel(ctx, m2, g.s[i] - 0.5 * g.t[j], u2);
    const auto& rule = gauss_legendre(cfg.n_aperture);
    std::vector<double> v, w;
    cx total = 0.0;
    for (const auto& iv : obj.support_intervals()) {
        rule.mapped(iv.lo, iv.hi, v, w);
        for (std::size_t n = 0; n < v.size(); ++n) {
            cx acc = 0.0;
            for (std::size_t i = 0; i < g.s.size(); ++i)
                for (std::size_t j = 0; j < nt; ++j) {
                    const double x1 = g.s[i] + 0.5 * g.t[j];
                    acc += g.env[i * nt + j] *
                           std::conj(fresnel_kernel(ctx, geom.z1, x1, v[n])) *
                           h2[i * nt + j];
                }
            total += w[n] * std::conj(iv.amplitude) *
                     std::conj(fresnel_kernel(ctx, geom.z2, v[n], u1)) * acc;
        }
    }
    return total;
}

double mean_intensity_path1_brute(double u1, const PathGeometry& geom,
                                  const WaveContext& ctx,
                                  const GaussianSchellSource& src,
                                  const PiecewiseAperture& obj,
                                  const EngineConfig& cfg) {
    geom.validate();
    src.validate();
    const BruteGrid g = make_brute_grid(src, cfg);
    const std::size_t nt = g.t.size();
    const auto& rule = gauss_legendre(cfg.n_aperture);
    // I1 factorizes per source cell as env * conj(A(x1)) A(x2), with A(x)
    // the object-filtered two-leg propagator from x to u1.
    std::vector<double> v, w;
    const auto propagate = [&](double x) {
        cx acc = 0.0;
        for (const auto& iv : obj.support_intervals()) {
            rule.mapped(iv.lo, iv.hi, v, w);
            for (std::size_t n = 0; n < v.size(); ++n)
                acc += w[n] * iv.amplitude *
                       fresnel_kernel(ctx, geom.z1, x, v[n]) *
                       fresnel_kernel(ctx, geom.z2, v[n], u1);
        }
        return acc;
    };
    cx total = 0.0;
    for (std::size_t i = 0; i < g.s.size(); ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            const cx a1 = propagate(g.s[i] + 0.5 * g.t[j]);
            const cx a2 = propagate(g.s[i] - 0.5 * g.t[j]);
            total += g.env[i * nt + j] * std::conj(a1) * a2;
        }
    return std::max(total.real(), 0.0);
}

double mean_intensity_path2_brute(double u2, const PathGeometry& geom,
                                  const WaveContext& ctx,
                                  const GaussianSchellSource& src,
                                  const EngineConfig& cfg) {
    geom.validate();
    src.validate();
    const RayTransferMatrix m2 = path2_matrix(geom);
    const BruteGrid g = make_brute_grid(src, cfg);
    const std::size_t nt = g.t.size();
    cx total = 0.0;
    for (std::size_t i = 0; i < g.s.size(); ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            const double x1 = g.s[i] + 0.5 * g.t[j];
            const double x2 = g.s[i] - 0.5 * g.t[j];
            total += g.env[i * nt + j] *
                     std::conj(collins_kernel(ctx, m2, x1, u2)) *
                     collins_kernel(ctx, m2, x2, u2);
        }
    return std::max(total.real(), 0.0);
}

} // namespace

cx cross_correlation(double u1, double u2, const PathGeometry& geom,
                     const WaveContext& ctx, const GaussianSchellSource& src,
                     const PiecewiseAperture& obj, const EngineConfig& cfg) {
    cfg.validate();
    if (obj.empty()) return 0.0;
    return cfg.engine == Engine::reduced
               ? cross_correlation_reduced(u1, u2, geom, ctx, src, obj, cfg)
               : cross_correlation_brute(u1, u2, geom, ctx, src, obj, cfg);
}

double mean_intensity_path1(double u1, const PathGeometry& geom,
                            const WaveContext& ctx, const GaussianSchellSource& src,
                            const PiecewiseAperture& obj, const EngineConfig& cfg) {
    cfg.validate();
    if (obj.empty()) return 0.0;
    return cfg.engine == Engine::reduced
               ? mean_intensity_path1_reduced(u1, geom, ctx, src, obj, cfg)
               : mean_intensity_path1_brute(u1, geom, ctx, src, obj, cfg);
}

double mean_intensity_path2(double u2, const PathGeometry& geom,
                            const WaveContext& ctx, const GaussianSchellSource& src,
                            const EngineConfig& cfg) {
    cfg.validate();
    return cfg.engine == Engine::reduced
               ? mean_intensity_path2_closed(u2, geom, ctx, src)
               : mean_intensity_path2_brute(u2, geom, ctx, src, cfg);
}

double coincidence_rate(double u1, double u2, const PathGeometry& geom,
                        const WaveContext& ctx, const GaussianSchellSource& src,
                        const PiecewiseAperture& obj, const EngineConfig& cfg) {
    if (obj.empty()) return 0.0;
    const double i1 = mean_intensity_path1(u1, geom, ctx, src, obj, cfg);
    const double i2 = mean_intensity_path2(u2, geom, ctx, src, cfg);
    const cx g = cross_correlation(u1, u2, geom, ctx, src, obj, cfg);
    return i1 * i2 + std::norm(g);
}

CorrelationScan ghost_image_scan(double u1_ref, std::vector<double> u2_grid,
                                 const PathGeometry& geom, const WaveContext& ctx,
                                 const GaussianSchellSource& src,
                                 const PiecewiseAperture& obj,
                                 const EngineConfig& cfg) {
    cfg.validate();
    CorrelationScan scan;
    scan.u1_ref = u1_ref;
    scan.u2_grid = std::move(u2_grid);
    const std::size_t n = scan.u2_grid.size();
    scan.gamma.resize(n);
    scan.I2.resize(n);
    scan.g2.resize(n);
    scan.I1_ref = mean_intensity_path1(u1_ref, geom, ctx, src, obj, cfg);
    parallel_for(n, [&](std::size_t i) {
        const double u2 = scan.u2_grid[i];
        scan.gamma[i] = cross_correlation(u1_ref, u2, geom, ctx, src, obj, cfg);
        scan.I2[i] = mean_intensity_path2(u2, geom, ctx, src, cfg);
        scan.g2[i] = scan.I1_ref * scan.I2[i] + std::norm(scan.gamma[i]);
    });
    return scan;
}

void check_brute_domain(const PathGeometry& geom, const WaveContext& ctx,
                        const GaussianSchellSource& src,
                        const PiecewiseAperture& obj, const EngineConfig& cfg,
                        double u2_abs_max) {
    geom.validate();
    src.validate();
    cfg.validate();
    const RayTransferMatrix m2 = path2_matrix(geom);
    const double k = ctx.wavenumber;
    const double s_max = cfg.source_extent * src.sigma_I;
    const double t_max = cfg.diff_extent * src.sigma_g;
    double v_max = 0.0;
    for (const auto& iv : obj.support_intervals())
        v_max = std::max({v_max, std::abs(iv.lo), std::abs(iv.hi)});
    // Exponent of the brute integrand in rotated coordinates:
    //   -ik (s + t/2 - v)^2 / (2 z1) + ik (a(s - t/2)^2 - 2(s - t/2)u2)/(2b).
    // Worst-case |dphi/ds| and |dphi/dt| over the grid corners:
    const double cq = 0.5 * k * std::abs(1.0 / geom.z1 - m2.a / m2.b);
    const double cst = 0.5 * k * std::abs(1.0 / geom.z1 + m2.a / m2.b);
    const double dphi_ds = 2.0 * cq * s_max + cst * t_max +
                           k * (v_max / geom.z1 + u2_abs_max / std::abs(m2.b));
    const double dphi_dt =
        cst * s_max + 0.5 * cq * t_max +
        0.5 * k * (v_max / geom.z1 + u2_abs_max / std::abs(m2.b));
    const double dphi_dv = k * (v_max * (1.0 / geom.z1 + 1.0 / geom.z2) +
                                (s_max + 0.5 * t_max) / geom.z1 + u2_abs_max / geom.z2);
    // Gauss-Legendre resolves exp(i c x) on a length-R interval once
    // c R / (2 n) drops below ~1.
    const double rs = dphi_ds * (2.0 * s_max) / (2.0 * cfg.n_source);
    const int n_t = cfg.n_diff > 0 ? cfg.n_diff : cfg.n_source;
    const double rt = dphi_dt * (2.0 * t_max) / (2.0 * n_t);
    double rv = 0.0;
    for (const auto& iv : obj.support_intervals())
        rv = std::max(rv, dphi_dv * (iv.hi - iv.lo) / (2.0 * cfg.n_aperture));
    const auto fail = [](const char* axis, double r) {
        throw brute_domain_error(
            std::string("brute engine cannot resolve the oscillatory phase along ") +
            axis + " (resolution ratio " + std::to_string(r) +
            " > 1); relax sigma_I/sigma_g or raise the grid sizes");
    };
    if (rs > 1.0) fail("the source sum coordinate", rs);
    if (rt > 1.0) fail("the source difference coordinate", rt);
    if (rv > 1.0) fail("the aperture coordinate", rv);
}

} // namespace ghostlight
