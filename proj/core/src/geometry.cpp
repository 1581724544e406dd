#include "ghostlight/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ghostlight {

WaveContext::WaveContext(double lambda_mm) : wavelength(lambda_mm) {
    if (!(lambda_mm > 0.0))
        throw invalid_geometry_error("wavelength must be positive, got " +
                                     std::to_string(lambda_mm));
    wavenumber = 2.0 * std::numbers::pi / lambda_mm;
}

RayTransferMatrix free_space(double L) {
    if (!(L > 0.0))
        throw invalid_geometry_error("free-space distance must be positive, got " +
                                     std::to_string(L));
    return {1.0, L, 0.0, 1.0, L};
}

RayTransferMatrix thin_lens(double f) {
    if (f == 0.0 || !std::isfinite(f))
        throw invalid_geometry_error("lens focal length must be finite and nonzero");
    return {1.0, 0.0, -1.0 / f, 1.0, 0.0};
}

RayTransferMatrix compose(const RayTransferMatrix& later,
                          const RayTransferMatrix& earlier) {
    RayTransferMatrix m{
        later.a * earlier.a + later.b * earlier.c,
        later.a * earlier.b + later.b * earlier.d,
        later.c * earlier.a + later.d * earlier.c,
        later.c * earlier.b + later.d * earlier.d,
        later.path_length + earlier.path_length,
    };
    if (std::abs(m.determinant() - 1.0) > kDetTolerance)
        throw invalid_geometry_error("composed ray matrix lost unit determinant");
    return m;
}

void PathGeometry::validate() const {
    if (!(z1 > 0.0) || !(z2 > 0.0) || !(l1 > 0.0) || !(l2 > 0.0))
        throw invalid_geometry_error("path distances z1, z2, l1, l2 must be positive");
    if (lens_present && f == 0.0)
        throw invalid_geometry_error("focal length must be nonzero when the lens is present");
}

RayTransferMatrix path2_matrix(double l1, double f, double l2, bool lens_present) {
    if (!lens_present)
        return free_space(l1 + l2);
    return compose(free_space(l2), compose(thin_lens(f), free_space(l1)));
}

RayTransferMatrix path2_matrix(const PathGeometry& geom) {
    geom.validate();
    return path2_matrix(geom.l1, geom.f, geom.l2, geom.lens_present);
}

double imaging_residual(double l1, double z1, double l2, double f) {
    if (l1 == z1)
        throw singular_configuration_error("imaging residual undefined at l1 == z1");
    if (l2 == 0.0 || f == 0.0)
        throw singular_configuration_error("imaging residual undefined for l2 == 0 or f == 0");
    return 1.0 / (l1 - z1) + 1.0 / l2 - 1.0 / f;
}

RayTransferMatrix effective_image_matrix(double z1, double l1, double f, double l2) {
    if (l1 == z1)
        throw singular_configuration_error("effective image matrix undefined at l1 == z1");
    const double s = l1 - z1;
    // free_space() insists on positive lengths; build the s < 0 branch directly.
    RayTransferMatrix lead{1.0, s, 0.0, 1.0, s};
    return compose(free_space(l2), compose(thin_lens(f), lead));
}

double magnification(double z1, double l1, double f, double l2, double eps) {
    const double res = imaging_residual(l1, z1, l2, f);
    if (std::abs(res) > eps)
        throw singular_configuration_error(
            "not an imaging configuration: residual " + std::to_string(res) +
            " mm^-1 exceeds tolerance");
    return effective_image_matrix(z1, l1, f, l2).a;
}

double imaging_residual_lens_in_path1(double S1, double S2, double S3, double f) {
    if (S1 == S2 || S3 == 0.0 || f == 0.0)
        throw singular_configuration_error("lens-in-path-one condition has a singular denominator");
    return 1.0 / (S1 - S2) + 1.0 / S3 - 1.0 / f;
}

} // namespace ghostlight
