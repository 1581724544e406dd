#pragma once

#include "ghostlight/errors.hpp"
#include "ghostlight/geometry.hpp"
#include "ghostlight/objects.hpp"
#include "ghostlight/source.hpp"

#include <complex>
#include <vector>

namespace ghostlight {

using cx = std::complex<double>;

// exp(-x^T M x + b^T x + c0) with M complex symmetric, Re(M) positive
// definite. n = 1 uses only m11/b1.
struct ComplexQuadraticForm {
    int n = 2;
    cx m11, m12, m22;
    cx b1, b2;
    cx c0;
};

// pi^{n/2} det(M)^{-1/2} exp(1/4 b^T M^-1 b + c0), principal branch.
// Throws quadratic_form_domain_error if Re(M) is not positive definite and
// branch_error if Re(det) <= 0.
cx gaussian_integral(const ComplexQuadraticForm& q);

enum class Engine { reduced, brute };

struct EngineConfig {
    Engine engine = Engine::reduced;
    int n_aperture = 64;        // Gauss-Legendre points per aperture interval
    int n_source = 257;         // brute-engine points, source sum coordinate
    int n_diff = 0;             // difference-coordinate points; 0 -> n_source
    double source_extent = 4.0; // brute sum coordinate: +-extent * sigma_I
    double diff_extent = 6.0;   // brute difference coordinate: +-extent * sigma_g
    double rtol = 1e-3;         // engine cross-check tolerance

    void validate() const;
};

// (i lambda L)^{-1/2} exp(ikL) exp(ik (x-y)^2 / 2L).
cx fresnel_kernel(const WaveContext& ctx, double L, double x, double y);

// (i lambda b)^{-1/2} exp(ik path_length) exp(ik (a x^2 - 2 x u + d u^2)/2b).
// Reduces to fresnel_kernel for the free-space matrix.
cx collins_kernel(const WaveContext& ctx, const RayTransferMatrix& m,
                  double x, double u);

// Gamma(u1, u2): object integral of H*(v) times the analytic (reduced) or
// rotated-coordinate quadrature (brute) source integral. Both engines share
// one normalization and phase convention.
cx cross_correlation(double u1, double u2, const PathGeometry& geom,
                     const WaveContext& ctx, const GaussianSchellSource& src,
                     const PiecewiseAperture& obj, const EngineConfig& cfg);

double mean_intensity_path1(double u1, const PathGeometry& geom,
                            const WaveContext& ctx, const GaussianSchellSource& src,
                            const PiecewiseAperture& obj, const EngineConfig& cfg);

double mean_intensity_path2(double u2, const PathGeometry& geom,
                            const WaveContext& ctx, const GaussianSchellSource& src,
                            const EngineConfig& cfg);

// <I1><I2> + |Gamma|^2 (thermal factorization of the coincidence rate).
double coincidence_rate(double u1, double u2, const PathGeometry& geom,
                        const WaveContext& ctx, const GaussianSchellSource& src,
                        const PiecewiseAperture& obj, const EngineConfig& cfg);

struct CorrelationScan {
    double u1_ref = 0.0;
    std::vector<double> u2_grid;
    std::vector<cx> gamma;
    double I1_ref = 0.0;
    std::vector<double> I2;
    std::vector<double> g2;
};

// Full detector-grid evaluation; grid points may run on worker threads but
// outputs are always in grid order.
CorrelationScan ghost_image_scan(double u1_ref, std::vector<double> u2_grid,
                                 const PathGeometry& geom, const WaveContext& ctx,
                                 const GaussianSchellSource& src,
                                 const PiecewiseAperture& obj,
                                 const EngineConfig& cfg);

// Throws brute_domain_error when Gauss-Legendre grids of this config cannot
// resolve the oscillatory phases of the scenario (checked per quadrature
// axis over |u2| <= u2_abs_max).
void check_brute_domain(const PathGeometry& geom, const WaveContext& ctx,
                        const GaussianSchellSource& src,
                        const PiecewiseAperture& obj, const EngineConfig& cfg,
                        double u2_abs_max);

} // namespace ghostlight
