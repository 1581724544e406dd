#include <ghostlight/metrics.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace ghostlight;

namespace {

CorrelationScan make_scan(const std::vector<double>& u,
                          const std::vector<double>& gabs, double I1,
                          double I2val) {
    CorrelationScan s;
    s.u1_ref = 0.0;
    s.u2_grid = u;
    s.I1_ref = I1;
    for (double g : gabs) {
        s.gamma.emplace_back(g, 0.0);
        s.I2.push_back(I2val);
        s.g2.push_back(I1 * I2val + g * g);
    }
    return s;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

} // namespace

TEST_CASE("zero correlation means zero visibility") {
    const auto u = linspace(-1.0, 1.0, 11);
    const auto s = make_scan(u, std::vector<double>(11, 0.0), 2.0, 3.0);
    CHECK(visibility(s) == 0.0);
    CHECK(visibility(s, VisibilityConvention::intensity_product_plus_correlation) == 0.0);
}

TEST_CASE("all-zero scan has undefined visibility") {
    const auto u = linspace(-1.0, 1.0, 5);
    const auto s = make_scan(u, std::vector<double>(5, 0.0), 0.0, 0.0);
    CHECK_THROWS_AS(visibility(s), undefined_metric_error);
    CorrelationScan empty;
    CHECK_THROWS_AS(visibility(empty), undefined_metric_error);
}

TEST_CASE("visibility conventions and the [0,1] bound") {
    // Saturated Cauchy-Schwarz: |Gamma|^2 == I1 I2 at the peak.
    const auto u = linspace(-1.0, 1.0, 9);
    std::vector<double> g(9, 0.1);
    g[4] = std::sqrt(6.0);
    auto s = make_scan(u, g, 2.0, 3.0);
    CHECK(visibility(s) == doctest::Approx(1.0));
    CHECK(visibility(s, VisibilityConvention::intensity_product_plus_correlation) ==
          doctest::Approx(0.5));
}

TEST_CASE("visibility is invariant under common rescaling") {
    const auto u = linspace(-1.0, 1.0, 9);
    std::vector<double> g{0.0, 0.2, 0.5, 0.9, 1.0, 0.9, 0.5, 0.2, 0.0};
    auto s = make_scan(u, g, 2.0, 3.0);
    const double v0 = visibility(s);
    for (auto& gm : s.gamma) gm *= 7.3;
    s.I1_ref *= 7.3;
    for (auto& i2 : s.I2) i2 *= 7.3;
    CHECK(visibility(s) == doctest::Approx(v0).epsilon(1e-12));
}

TEST_CASE("quality vanishes iff image matches the ideal") {
    const PiecewiseAperture obj = double_slit(0.01, 0.03);
    const auto u = linspace(-0.05, 0.05, 201);
    std::vector<double> g;
    for (double x : u) g.push_back(std::abs(obj.transmission(-x)));  // mag = -1
    auto s = make_scan(u, g, 1.0, 1.0);
    const QualityReport rep = quality(s, obj, -1.0);
    CHECK(rep.Q == doctest::Approx(0.0));
    // Perturb one in-support point.
    s.gamma[100] = {0.5, 0.0};
    CHECK(quality(s, obj, -1.0).Q > 0.0);
}

TEST_CASE("quality is invariant under scaling gamma alone") {
    const PiecewiseAperture obj = double_slit(0.01, 0.03);
    const auto u = linspace(-0.05, 0.05, 201);
    std::vector<double> g;
    for (double x : u) g.push_back(std::exp(-x * x / 2e-4));
    auto s = make_scan(u, g, 1.0, 1.0);
    const double q0 = quality(s, obj, -1.0).Q;
    for (auto& gm : s.gamma) gm *= 0.013;
    CHECK(quality(s, obj, -1.0).Q == doctest::Approx(q0).epsilon(1e-12));
}

TEST_CASE("quality needs the ideal on the grid") {
    const PiecewiseAperture obj = double_slit(0.01, 0.03);
    const auto u = linspace(10.0, 11.0, 11);  // far outside the image
    auto s = make_scan(u, std::vector<double>(11, 1.0), 1.0, 1.0);
    CHECK_THROWS_AS(quality(s, obj, -1.0), undefined_metric_error);
    const auto u2 = linspace(-0.05, 0.05, 11);
    auto s2 = make_scan(u2, std::vector<double>(11, 1.0), 1.0, 1.0);
    CHECK_THROWS_AS(quality(s2, obj, 0.0), undefined_metric_error);
}

TEST_CASE("quality converges under grid refinement") {
    const PiecewiseAperture obj = double_slit(0.01, 0.03);
    auto build = [&](int n) {
        const auto u = linspace(-0.05, 0.05, n);
        std::vector<double> g;
        for (double x : u) g.push_back(std::exp(-std::pow(x / 0.02, 2.0)));
        return make_scan(u, g, 1.0, 1.0);
    };
    const double qa = quality(build(401), obj, -1.0).Q;
    const double qb = quality(build(801), obj, -1.0).Q;
    CHECK(std::abs(qa - qb) / qb < 0.01);
}

TEST_CASE("peak finding on simple shapes") {
    const auto u = linspace(-1.0, 1.0, 101);
    std::vector<double> lobe;
    for (double x : u) lobe.push_back(std::exp(-x * x * 8.0));
    CHECK(peak_positions(make_scan(u, lobe, 1.0, 1.0)).size() == 1);
    CHECK(peak_positions(make_scan(u, std::vector<double>(101, 0.0), 1.0, 1.0)).empty());
}

TEST_CASE("sub-grid interpolation beats the grid step") {
    // Peak deliberately off-grid at x = 0.1234.
    const auto u = linspace(-1.0, 1.0, 101);
    std::vector<double> g;
    for (double x : u) g.push_back(std::exp(-std::pow(x - 0.1234, 2.0) * 4.0));
    const auto peaks = peak_positions(make_scan(u, g, 1.0, 1.0));
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0] - 0.1234) < 0.005);  // grid step is 0.02
}

TEST_CASE("flat-top plateaus report their midpoint") {
    const auto u = linspace(0.0, 1.0, 101);
    std::vector<double> g(101, 0.0);
    for (int i = 40; i <= 60; ++i) g[i] = 1.0;  // plateau centered at 0.5
    const auto peaks = peak_positions(make_scan(u, g, 1.0, 1.0));
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("prominence separates major and minor maxima") {
    const auto u = linspace(-1.0, 1.0, 201);
    std::vector<double> g;
    for (double x : u)
        g.push_back(std::sqrt(std::exp(-8.0 * x * x) +
                              0.05 * std::exp(-200.0 * std::pow(x - 0.7, 2.0))));
    CHECK(peak_positions(make_scan(u, g, 1.0, 1.0), 0.1).size() == 1);
    CHECK(peak_positions(make_scan(u, g, 1.0, 1.0), 0.01).size() == 2);
}

TEST_CASE("fringe period of a synthetic cos^2 pattern") {
    const double period = 0.37;
    const auto u = linspace(-2.0, 2.0, 1601);
    std::vector<double> g;
    for (double x : u) {
        const double c = std::cos(std::numbers::pi * x / period);
        g.push_back(c * c);
    }
    const FringeReport rep = fringe_period(make_scan(u, g, 1.0, 1.0));
    CHECK(rep.period == doctest::Approx(period).epsilon(0.01));
    CHECK(rep.spacing_cv < 0.01);
}

TEST_CASE("too few fringes is an error") {
    const auto u = linspace(-1.0, 1.0, 101);
    std::vector<double> lobe;
    for (double x : u) lobe.push_back(std::exp(-x * x * 8.0));
    CHECK_THROWS_AS(fringe_period(make_scan(u, lobe, 1.0, 1.0)),
                    insufficient_fringes_error);
}
