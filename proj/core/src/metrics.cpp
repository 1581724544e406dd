#include "ghostlight/metrics.hpp"

#include "ghostlight/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace ghostlight {

namespace {

std::vector<double> gamma_sq(const CorrelationScan& scan) {
    std::vector<double> y(scan.gamma.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::norm(scan.gamma[i]);
    return y;
}

double trapezoid_sum(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

} // namespace

double visibility(const CorrelationScan& scan, VisibilityConvention conv) {
    if (scan.u2_grid.empty())
        throw undefined_metric_error("visibility of an empty scan is undefined");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < scan.u2_grid.size(); ++i) {
        const double g2 = std::norm(scan.gamma[i]);
        const double bg = scan.I1_ref * scan.I2[i];
        num = std::max(num, g2);
        den = std::max(den, conv == VisibilityConvention::intensity_product
                                ? bg
                                : bg + g2);
    }
    if (!(den > 0.0))
        throw undefined_metric_error(
            "visibility undefined: accidental background is zero everywhere");
    return num / den;
}

QualityReport quality(const CorrelationScan& scan, const PiecewiseAperture& ideal,
                      double mag) {
    if (scan.u2_grid.size() < 2)
        throw undefined_metric_error("quality needs at least two grid points");
    if (mag == 0.0)
        throw undefined_metric_error("quality needs a nonzero magnification");
    QualityReport rep;
    rep.grid = scan.u2_grid;
    rep.normalized_image = gamma_sq(scan);
    rep.normalized_ideal.resize(rep.grid.size());
    double img_max = 0.0, ideal_max = 0.0;
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        rep.normalized_ideal[i] = std::norm(ideal.transmission(rep.grid[i] / mag));
        img_max = std::max(img_max, rep.normalized_image[i]);
        ideal_max = std::max(ideal_max, rep.normalized_ideal[i]);
    }
    if (!(ideal_max > 0.0))
        throw undefined_metric_error(
            "quality undefined: ideal image has zero measure on the grid");
    if (!(img_max > 0.0))
        throw undefined_metric_error(
            "quality undefined: correlation image is identically zero");
    std::vector<double> diff2(rep.grid.size()), ideal2(rep.grid.size());
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        rep.normalized_image[i] /= img_max;
        rep.normalized_ideal[i] /= ideal_max;
        const double d = rep.normalized_image[i] - rep.normalized_ideal[i];
        diff2[i] = d * d;
        ideal2[i] = rep.normalized_ideal[i] * rep.normalized_ideal[i];
    }
    rep.Q = trapezoid_sum(rep.grid, diff2) / trapezoid_sum(rep.grid, ideal2);
    return rep;
}

std::vector<double> peak_positions(const CorrelationScan& scan, double prominence) {
    const std::size_t n = scan.u2_grid.size();
    std::vector<double> out;
    if (n < 3) return out;
    std::vector<double> y = gamma_sq(scan);
    const double ymax = *std::max_element(y.begin(), y.end());
    if (!(ymax > 0.0)) return out;
    for (double& v : y) v /= ymax;
    const auto& u = scan.u2_grid;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(y[i] > y[i - 1])) { ++i; continue; }
        // Extend across any flat run at the top.
        std::size_t j = i;
        while (j + 1 < n && y[j + 1] == y[j]) ++j;
        if (j + 1 >= n || !(y[j + 1] < y[j])) { i = j + 1; continue; }
        const double v = y[i];
        // Prominence: drop to the higher of the two interval minima, each
        // taken out to the nearest strictly higher sample (or the edge).
        double lmin = v, rmin = v;
        for (std::size_t p = i; p-- > 0;) {
            if (y[p] > v) break;
            lmin = std::min(lmin, y[p]);
        }
        for (std::size_t p = j + 1; p < n; ++p) {
            if (y[p] > v) break;
            rmin = std::min(rmin, y[p]);
        }
        if (v - std::max(lmin, rmin) >= prominence) {
            // Flat-top plateaus give an arbitrary discrete argmax; report the
            // midpoint of the near-flat neighborhood instead of interpolating.
            std::size_t lo = i, hi = j;
            while (lo > 0 && y[lo - 1] >= v - 1e-3) --lo;
            while (hi + 1 < n && y[hi + 1] >= v - 1e-3) ++hi;
            if (hi - lo >= 2) {
                out.push_back(0.5 * (u[lo] + u[hi]));
            } else {
                const double ym = y[i - 1], y0 = y[i], yp = y[i + 1];
                const double denom = ym - 2.0 * y0 + yp;
                double pos = u[i];
                if (denom < 0.0)
                    pos += 0.5 * (ym - yp) / denom * (u[i + 1] - u[i]);
                out.push_back(pos);
            }
        }
        i = j + 1;
    }
    return out;
}

FringeReport fringe_period(const CorrelationScan& scan, double prominence) {
    FringeReport rep;
    rep.peaks = peak_positions(scan, prominence);
    if (rep.peaks.size() < 5)
        throw insufficient_fringes_error(
            "fringe period needs >= 5 peaks, found " +
            std::to_string(rep.peaks.size()));
    std::vector<double> sp;
    for (std::size_t i = 1; i < rep.peaks.size(); ++i)
        sp.push_back(rep.peaks[i] - rep.peaks[i - 1]);
    double mean = 0.0;
    for (double s : sp) mean += s;
    mean /= static_cast<double>(sp.size());
    double var = 0.0;
    for (double s : sp) var += (s - mean) * (s - mean);
    var /= static_cast<double>(sp.size());
    rep.period = mean;
    rep.spacing_cv = std::sqrt(var) / mean;
    return rep;
}

} // namespace ghostlight
