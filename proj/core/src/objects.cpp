#include "ghostlight/objects.hpp"

#include <algorithm>
#include <string>

namespace ghostlight {

PiecewiseAperture::PiecewiseAperture(std::vector<ApertureInterval> intervals)
    : intervals_(std::move(intervals)) {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const ApertureInterval& x, const ApertureInterval& y) {
                  return x.lo < y.lo;
              });
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (!(intervals_[i].lo < intervals_[i].hi))
            throw invalid_aperture_error("aperture interval must have lo < hi");
        if (i > 0 && intervals_[i].lo < intervals_[i - 1].hi)
            throw invalid_aperture_error("aperture intervals must be disjoint");
    }
}

std::complex<double> PiecewiseAperture::transmission(double v) const {
    // Intervals are sorted; binary-search the candidate.
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), v,
                               [](double x, const ApertureInterval& iv) {
                                   return x < iv.lo;
                               });
    if (it == intervals_.begin()) return {0.0, 0.0};
    --it;
    if (v >= it->lo && v < it->hi) return it->amplitude;
    return {0.0, 0.0};
}

double PiecewiseAperture::total_measure() const {
    double m = 0.0;
    for (const auto& iv : intervals_) m += iv.hi - iv.lo;
    return m;
}

PiecewiseAperture double_slit(double slit_width, double separation) {
    if (!(slit_width > 0.0))
        throw invalid_aperture_error("slit width must be positive");
    if (!(slit_width < separation))
        throw invalid_aperture_error(
            "slits overlap: width " + std::to_string(slit_width) +
            " >= separation " + std::to_string(separation));
    const double c = separation / 2.0, h = slit_width / 2.0;
    return PiecewiseAperture({{-c - h, -c + h}, {c - h, c + h}});
}

PiecewiseAperture single_slit(double slit_width) {
    if (!(slit_width > 0.0))
        throw invalid_aperture_error("slit width must be positive");
    return PiecewiseAperture({{-slit_width / 2.0, slit_width / 2.0}});
}

std::complex<double> transmission(const PiecewiseAperture& ap, double v) {
    return ap.transmission(v);
}

const std::vector<ApertureInterval>& support_intervals(const PiecewiseAperture& ap) {
    return ap.support_intervals();
}

} // namespace ghostlight
