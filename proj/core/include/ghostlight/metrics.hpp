#pragma once

#include "ghostlight/correlator.hpp"
#include "ghostlight/objects.hpp"

#include <vector>

namespace ghostlight {

enum class VisibilityConvention {
    intensity_product,                   // V = max|Gamma|^2 / max(I1 I2)
    intensity_product_plus_correlation,  // denominator max(I1 I2 + |Gamma|^2)
};

// Peak correlation over the peak accidental background. Throws
// undefined_metric_error for an all-zero scan.
double visibility(const CorrelationScan& scan,
                  VisibilityConvention conv = VisibilityConvention::intensity_product);

struct QualityReport {
    double Q = 0.0;
    std::vector<double> grid;
    std::vector<double> normalized_image;
    std::vector<double> normalized_ideal;
};

// Normalized mean-square deviation of |Gamma|^2 from the peak-normalized
// magnified object |H(u2/mag)|^2; trapezoid rule on the scan grid.
QualityReport quality(const CorrelationScan& scan, const PiecewiseAperture& ideal,
                      double mag);

// Local maxima of normalized |Gamma|^2 with the given prominence; positions
// refined by quadratic sub-grid interpolation, or the plateau midpoint when
// the peak neighborhood is flat.
std::vector<double> peak_positions(const CorrelationScan& scan,
                                   double prominence = 0.1);

struct FringeReport {
    double period = 0.0;        // mean spacing of consecutive peaks
    double spacing_cv = 0.0;    // coefficient of variation of the spacings
    std::vector<double> peaks;
};

// Requires >= 5 detected peaks, else insufficient_fringes_error.
FringeReport fringe_period(const CorrelationScan& scan, double prominence = 0.1);

} // namespace ghostlight
