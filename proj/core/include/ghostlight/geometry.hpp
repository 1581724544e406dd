#pragma once

#include "ghostlight/errors.hpp"

namespace ghostlight {

inline constexpr double kDetTolerance = 1e-9;      // |det - 1| bound
inline constexpr double kImagingTolerance = 1e-9;  // [mm^-1] residual bound

// Wavelength/wavenumber pair; lengths in millimetres throughout.
struct WaveContext {
    double wavelength;  // [mm]
    double wavenumber;  // [rad/mm]

    explicit WaveContext(double lambda_mm);
};

// Paraxial ABCD element. `path_length` accumulates the on-axis optical
// path so propagation kernels carry the exp(ik L) phase of the system
// they represent (free space adds L, a thin lens adds nothing).
struct RayTransferMatrix {
    double a = 1.0;  // dimensionless
    double b = 0.0;  // [mm]
    double c = 0.0;  // [mm^-1]
    double d = 1.0;  // dimensionless
    double path_length = 0.0;  // [mm]

    double determinant() const { return a * d - b * c; }
};

RayTransferMatrix free_space(double L);
RayTransferMatrix thin_lens(double f);

// later * earlier (light passes through `earlier` first).
RayTransferMatrix compose(const RayTransferMatrix& later,
                          const RayTransferMatrix& earlier);

// Two-path layout of the ghost-imaging scheme. Path one: source -> object
// (z1) -> detector D1 (z2). Path two: source -> lens (l1) -> D2 (l2).
// lens_present=false is the ghost-interference mode.
struct PathGeometry {
    double z1;
    double z2;
    double l1;
    double f;
    double l2;
    bool lens_present = true;

    void validate() const;
};

RayTransferMatrix path2_matrix(double l1, double f, double l2,
                               bool lens_present = true);
RayTransferMatrix path2_matrix(const PathGeometry& geom);

// 1/(l1 - z1) + 1/l2 - 1/f; zero selects the imaging configuration.
double imaging_residual(double l1, double z1, double l2, double f);

// free(l2) * lens(f) * free(l1 - z1); b element vanishes when the
// imaging residual does.
RayTransferMatrix effective_image_matrix(double z1, double l1, double f,
                                         double l2);

// a element of the effective image matrix, -l2/(l1 - z1); requires the
// imaging residual to be within eps.
double magnification(double z1, double l1, double f, double l2,
                     double eps = kImagingTolerance);

// Residual of the lens-in-path-one condition 1/(S1 - S2) + 1/S3 = 1/f.
// S1: source -> lens, S2: source -> D2, S3: lens -> object. The -S2 sign
// is the classical (thermal) case; the quantum counterpart has +S2.
double imaging_residual_lens_in_path1(double S1, double S2, double S3,
                                      double f);

} // namespace ghostlight
