#include <ghostlight/correlator.hpp>
#include <ghostlight/quadrature.hpp>

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace ghostlight;

namespace {

const PathGeometry kImaging{10.0, 40.0, 30.0, 10.0, 20.0, true};
const WaveContext kCtx(7.02e-4);

PiecewiseAperture slits() { return double_slit(0.01, 0.03); }

// Independent 2-D Gauss-Legendre evaluation of a complex quadratic form.
cx brute_form(const ComplexQuadraticForm& q, int n = 256, double extent = 10.0) {
    std::vector<double> x, w;
    gauss_legendre(n).mapped(-extent, extent, x, w);
    if (q.n == 1) {
        cx acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            acc += w[i] * std::exp(-q.m11 * x[i] * x[i] + q.b1 * x[i] + q.c0);
        return acc;
    }
    cx acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            acc += w[i] * w[j] *
                   std::exp(-(q.m11 * x[i] * x[i] + 2.0 * q.m12 * x[i] * x[j] +
                              q.m22 * x[j] * x[j]) +
                            q.b1 * x[i] + q.b2 * x[j] + q.c0);
    return acc;
}

} // namespace

TEST_CASE("gaussian integral, frozen 1-D oracle") {
    ComplexQuadraticForm q;
    q.n = 1;
    q.m11 = {2.0, 1.0};
    q.b1 = {0.5, -0.3};
    q.c0 = {0.0, 0.1};
    const cx got = gaussian_integral(q);
    CHECK(got.real() == doctest::Approx(1.1694289491624594).epsilon(1e-12));
    CHECK(got.imag() == doctest::Approx(-0.2005283440351034).epsilon(1e-12));
}

TEST_CASE("gaussian integral, frozen 2-D oracle") {
    ComplexQuadraticForm q;
    q.m11 = {1.5, 0.4};
    q.m12 = {-0.3, 0.2};
    q.m22 = {2.0, -0.5};
    q.b1 = {0.0, 0.7};
    q.b2 = {-0.2, 0.1};
    q.c0 = {0.05, 0.0};
    const cx got = gaussian_integral(q);
    CHECK(got.real() == doctest::Approx(1.7166217150974645).epsilon(1e-12));
    CHECK(got.imag() == doctest::Approx(-0.019667574811555566).epsilon(1e-10));
}

TEST_CASE("gaussian integral rejects non-positive-definite real parts") {
    ComplexQuadraticForm q;
    q.m11 = {-1.0, 0.0};
    q.m22 = {1.0, 0.0};
    CHECK_THROWS_AS(gaussian_integral(q), quadratic_form_domain_error);
    q.m11 = {0.5, 0.0};
    q.m12 = {1.0, 0.0};  // minor 0.5*1 - 1 < 0
    CHECK_THROWS_AS(gaussian_integral(q), quadratic_form_domain_error);
}

TEST_CASE("gaussian integral vs quadrature on random SPD forms") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        // Re(M) = A A^T + 0.3 I keeps the form integrable on +-10.
        const double a11 = u(rng), a12 = u(rng), a21 = u(rng), a22 = u(rng);
        ComplexQuadraticForm q;
        q.m11 = {a11 * a11 + a12 * a12 + 0.3, 0.4 * u(rng)};
        q.m22 = {a21 * a21 + a22 * a22 + 0.3, 0.4 * u(rng)};
        q.m12 = {a11 * a21 + a12 * a22, 0.3 * u(rng)};
        q.b1 = {u(rng), u(rng)};
        q.b2 = {u(rng), u(rng)};
        q.c0 = {0.2 * u(rng), u(rng)};
        const cx got = gaussian_integral(q);
        const cx ref = brute_form(q);
        CHECK(std::abs(got - ref) <= 1e-6 * std::abs(ref));
    }
}

TEST_CASE("collins kernel reduces to the fresnel kernel in free space") {
    const RayTransferMatrix m = free_space(17.0);
    for (double x : {-0.3, 0.0, 0.4})
        for (double u2 : {-0.1, 0.25}) {
            const cx a = collins_kernel(kCtx, m, x, u2);
            const cx b = fresnel_kernel(kCtx, 17.0, x, u2);
            CHECK(std::abs(a - b) <= 1e-14 * std::abs(b));
        }
}

TEST_CASE("kernel degeneracies") {
    RayTransferMatrix m = effective_image_matrix(10.0, 30.0, 10.0, 20.0);
    m.b = 0.0;  // exact image plane
    CHECK_THROWS_AS(collins_kernel(kCtx, m, 0.0, 0.0), degenerate_kernel_error);
    CHECK_THROWS_AS(fresnel_kernel(kCtx, 0.0, 0.0, 0.0), invalid_geometry_error);
}

TEST_CASE("reduced engine against frozen scan oracles (fig2a parameters)") {
    const GaussianSchellSource src{5.0, 1e-5};
    EngineConfig cfg;
    const cx g = cross_correlation(0.0, 0.015, kImaging, kCtx, src, slits(), cfg);
    CHECK(g.real() == doctest::Approx(-0.00011344867916427089).epsilon(1e-9));
    CHECK(g.imag() == doctest::Approx(9.7494057971579535e-05).epsilon(1e-9));
    CHECK(mean_intensity_path1(0.0, kImaging, kCtx, src, slits(), cfg) ==
          doctest::Approx(1.7534724511312905e-05).epsilon(1e-9));
    CHECK(mean_intensity_path2(0.02, kImaging, kCtx, src, cfg) ==
          doctest::Approx(0.0447072851474617).epsilon(1e-9));
    CHECK(mean_intensity_path2(0.0, kImaging, kCtx, src, cfg) ==
          doctest::Approx(0.04470728586231802).epsilon(1e-9));
}

TEST_CASE("reduced engine, relaxed coherence oracle") {
    const GaussianSchellSource src{0.5, 0.01};
    EngineConfig cfg;
    const cx g = cross_correlation(0.0, 0.015, kImaging, kCtx, src, slits(), cfg);
    CHECK(g.real() == doctest::Approx(-0.04322072639353841).epsilon(1e-9));
    CHECK(g.imag() == doctest::Approx(0.03721008331601766).epsilon(1e-9));
}

TEST_CASE("engines agree at a brute-resolvable point") {
    const GaussianSchellSource src{0.5, 0.01};
    EngineConfig red;
    red.n_aperture = 48;
    EngineConfig brute = red;
    brute.engine = Engine::brute;
    brute.n_source = 129;
    const cx a = cross_correlation(0.0, 0.015, kImaging, kCtx, src, slits(), red);
    const cx b = cross_correlation(0.0, 0.015, kImaging, kCtx, src, slits(), brute);
    CHECK(std::abs(a - b) <= 1e-3 * std::abs(a));
    const double i2a = mean_intensity_path2(0.02, kImaging, kCtx, src, red);
    const double i2b = mean_intensity_path2(0.02, kImaging, kCtx, src, brute);
    CHECK(std::abs(i2a - i2b) <= 1e-3 * i2a);
}

TEST_CASE("coincidence rate is the thermal factorization") {
    const GaussianSchellSource src{1.0, 0.001};
    EngineConfig cfg;
    const double i1 = mean_intensity_path1(0.0, kImaging, kCtx, src, slits(), cfg);
    const double i2 = mean_intensity_path2(0.015, kImaging, kCtx, src, cfg);
    const cx g = cross_correlation(0.0, 0.015, kImaging, kCtx, src, slits(), cfg);
    const double g2 = coincidence_rate(0.0, 0.015, kImaging, kCtx, src, slits(), cfg);
    CHECK(g2 == doctest::Approx(i1 * i2 + std::norm(g)).epsilon(1e-12));
    CHECK(g2 >= i1 * i2);
}

TEST_CASE("scan outputs stay in grid order and match point evaluation") {
    const GaussianSchellSource src{5.0, 1e-5};
    EngineConfig cfg;
    std::vector<double> grid{-0.02, -0.005, 0.0, 0.011, 0.03};
    const CorrelationScan scan =
        ghost_image_scan(0.0, grid, kImaging, kCtx, src, slits(), cfg);
    REQUIRE(scan.u2_grid.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(scan.u2_grid[i] == grid[i]);
        const cx g = cross_correlation(0.0, grid[i], kImaging, kCtx, src, slits(), cfg);
        CHECK(std::abs(scan.gamma[i] - g) <= 1e-13 * (std::abs(g) + 1e-300));
        CHECK(scan.g2[i] ==
              doctest::Approx(scan.I1_ref * scan.I2[i] + std::norm(scan.gamma[i])));
    }
}

TEST_CASE("symmetric object gives a symmetric image") {
    const GaussianSchellSource src{5.0, 1e-5};
    EngineConfig cfg;
    for (double u2 : {0.005, 0.012, 0.015, 0.03}) {
        const cx gp = cross_correlation(0.0, u2, kImaging, kCtx, src, slits(), cfg);
        const cx gm = cross_correlation(0.0, -u2, kImaging, kCtx, src, slits(), cfg);
        CHECK(std::abs(std::abs(gp) - std::abs(gm)) <=
              1e-10 * (std::abs(gp) + 1e-300));
    }
}

TEST_CASE("Cauchy-Schwarz holds pointwise") {
    EngineConfig cfg;
    for (double sg : {1e-5, 1e-3, 0.01}) {
        const GaussianSchellSource src{2.0, sg};
        const double i1 = mean_intensity_path1(0.0, kImaging, kCtx, src, slits(), cfg);
        for (double u2 : {0.0, 0.01, 0.015, 0.04}) {
            const double i2 = mean_intensity_path2(u2, kImaging, kCtx, src, cfg);
            const cx g = cross_correlation(0.0, u2, kImaging, kCtx, src, slits(), cfg);
            CHECK(std::norm(g) <= i1 * i2 * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("empty object scatters nothing") {
    const GaussianSchellSource src{5.0, 1e-3};
    EngineConfig cfg;
    const PiecewiseAperture none;
    CHECK(cross_correlation(0.0, 0.01, kImaging, kCtx, src, none, cfg) == cx(0.0));
    CHECK(mean_intensity_path1(0.0, kImaging, kCtx, src, none, cfg) == 0.0);
}

TEST_CASE("engine configuration validation") {
    EngineConfig cfg;
    cfg.n_aperture = 4;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = EngineConfig{};
    cfg.source_extent = 1.0;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = EngineConfig{};
    cfg.rtol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("brute domain check refuses unresolvable scenarios") {
    EngineConfig brute;
    brute.engine = Engine::brute;
    const GaussianSchellSource narrow{5.0, 1e-5};
    const GaussianSchellSource relaxed{0.5, 0.01};
    const PiecewiseAperture obj = slits();
    // Default fig2a: the sum-coordinate phase is far beyond the grid.
    CHECK_THROWS_AS(check_brute_domain(kImaging, kCtx, narrow, obj, brute, 0.05),
                    brute_domain_error);
    // Relaxed variant resolves fine.
    CHECK_NOTHROW(check_brute_domain(kImaging, kCtx, relaxed, obj, brute, 0.05));
}
