#pragma once

#include "ghostlight/errors.hpp"

#include <complex>
#include <vector>

namespace ghostlight {

// Half-open [lo, hi) with a constant complex amplitude.
struct ApertureInterval {
    double lo;
    double hi;
    std::complex<double> amplitude{1.0, 0.0};
};

// Object transmission H(v): sorted, pairwise-disjoint intervals; zero
// outside their union. Immutable after construction.
class PiecewiseAperture {
public:
    PiecewiseAperture() = default;  // empty aperture, H == 0
    explicit PiecewiseAperture(std::vector<ApertureInterval> intervals);

    std::complex<double> transmission(double v) const;
    const std::vector<ApertureInterval>& support_intervals() const {
        return intervals_;
    }
    double total_measure() const;
    bool empty() const { return intervals_.empty(); }

private:
    std::vector<ApertureInterval> intervals_;
};

// Two unit slits of width a centered at +-d/2.
PiecewiseAperture double_slit(double slit_width, double separation);

// One unit slit of width a centered at the axis.
PiecewiseAperture single_slit(double slit_width);

std::complex<double> transmission(const PiecewiseAperture& ap, double v);
const std::vector<ApertureInterval>& support_intervals(const PiecewiseAperture& ap);

} // namespace ghostlight
