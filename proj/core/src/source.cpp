#include "ghostlight/source.hpp"

#include "ghostlight/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ghostlight {

void GaussianSchellSource::validate() const {
    if (!(sigma_I > 0.0) || !(sigma_g > 0.0))
        throw config_error("source widths sigma_I and sigma_g must be positive");
}

double gsm_correlation(const GaussianSchellSource& src, double x1, double x2) {
    const double d = x1 - x2;
    return std::exp(-(x1 * x1 + x2 * x2) / (4.0 * src.sigma_I * src.sigma_I) -
                    d * d / (2.0 * src.sigma_g * src.sigma_g));
}

void BlackbodySpectrumParams::validate() const {
    if (!(temperature > 0.0))
        throw config_error("blackbody temperature must be positive");
    if (k_min < 0.0 || (k_max != 0.0 && !(k_max > k_min)))
        throw config_error("blackbody cutoffs require 0 <= k_min < k_max");
    if (n_quad < 64)
        throw config_error("blackbody n_quad must be >= 64");
}

double BlackbodySpectrumParams::k_peak() const {
    // Wien scale: hbar c k_peak = 2.821 k_B T.
    return 2.821439372122079 * k_B * temperature / (hbar * c);
}

double BlackbodySpectrumParams::effective_k_max() const {
    return k_max > 0.0 ? k_max : 20.0 * k_peak();
}

namespace {

// Closed-form total mass of k^2/(e^{alpha k}-1) on [0, inf): 2 zeta(3)/alpha^3.
constexpr double kTwoZeta3 = 2.0 * 1.2020569031595942854;

double occupation_integral(const BlackbodySpectrumParams& p, double dx) {
    const double alpha = p.hbar * p.c / (p.k_B * p.temperature);
    const auto& rule = gauss_legendre(p.n_quad);
    return rule.integrate(p.k_min, p.effective_k_max(), [&](double k) {
        return k * k / std::expm1(alpha * k) * std::cos(k * dx);
    });
}

} // namespace

double blackbody_kernel(const BlackbodySpectrumParams& params, double dx) {
    params.validate();
    const double alpha = params.hbar * params.c / (params.k_B * params.temperature);
    const double total = occupation_integral(params, 0.0);
    if (params.k_min == 0.0) {
        const double exact = kTwoZeta3 / (alpha * alpha * alpha);
        if (std::abs(exact - total) > 1e-9 * exact)
            throw accuracy_error("blackbody cutoffs truncate more than 1e-9 of the spectrum");
    }
    return occupation_integral(params, dx);
}

CoherenceFit fit_coherence(const BlackbodySpectrumParams& params) {
    params.validate();
    const double peak = blackbody_kernel(params, 0.0);
    // Sample outward until the normalized kernel drops below the 0.1 fit
    // window; the width scale is ~alpha, so step in fractions of it.
    const double alpha = params.hbar * params.c / (params.k_B * params.temperature);
    const double step = alpha / 100.0;
    std::vector<double> dx, logg, g;
    for (int i = 1; i <= 4000; ++i) {
        const double x = i * step;
        const double val = occupation_integral(params, x) / peak;
        if (val < 0.1) break;
        dx.push_back(x);
        g.push_back(val);
        logg.push_back(std::log(val));
    }
    if (dx.size() < 8)
        throw accuracy_error("blackbody kernel fit window too small");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) {
        const double d2 = dx[i] * dx[i];
        num -= d2 * logg[i];
        den += d2 * d2;
    }
    const double beta = num / den;  // model: g = exp(-beta dx^2)
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw accuracy_error("blackbody kernel fit diverged (beta = " +
                             std::to_string(beta) + ")");
    double ss = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) {
        const double r = std::exp(-beta * dx[i] * dx[i]) - g[i];
        ss += r * r;
    }
    return {std::sqrt(0.5 / beta), std::sqrt(ss / static_cast<double>(dx.size()))};
}

double fit_coherence_width(const BlackbodySpectrumParams& params) {
    return fit_coherence(params).sigma_g;
}

} // namespace ghostlight
