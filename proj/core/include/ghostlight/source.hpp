#pragma once

#include "ghostlight/errors.hpp"

namespace ghostlight {

// Gaussian Schell-model source correlation: Gaussian intensity envelope of
// width sigma_I times a Gaussian coherence factor of width sigma_g.
struct GaussianSchellSource {
    double sigma_I;  // transverse size [mm]
    double sigma_g;  // transverse coherence width [mm]

    void validate() const;
};

// exp(-(x1^2 + x2^2)/(4 sigma_I^2)) * exp(-(x1 - x2)^2/(2 sigma_g^2)).
double gsm_correlation(const GaussianSchellSource& src, double x1, double x2);

// Planck-spectrum correlation kernel, scalar 1-D reduction. Physical
// constants are SI except the light speed, which is mm/s so wavenumbers
// stay in rad/mm.
struct BlackbodySpectrumParams {
    double temperature;            // [K]
    double hbar = 1.054571817e-34; // [J s]
    double k_B = 1.380649e-23;     // [J/K]
    double c = 2.99792458e11;      // [mm/s]
    double k_min = 0.0;            // [rad/mm]
    double k_max = 0.0;            // [rad/mm]; 0 -> 20 * k_peak
    int n_quad = 2048;

    void validate() const;
    // hbar c k_peak = 2.821... k_B T (peak of the k^2 Planck occupation).
    double k_peak() const;
    double effective_k_max() const;
};

// Unnormalized kernel(dx) = integral over k of
// k^2 cos(k dx) / (exp(hbar c k / k_B T) - 1); even in dx, maximal at 0.
double blackbody_kernel(const BlackbodySpectrumParams& params, double dx);

struct CoherenceFit {
    double sigma_g;       // fitted Gaussian width [mm]
    double rms_residual;  // RMS of (fit - kernel)/kernel(0) over the fit window
};

// Least-squares Gaussian fit (on log values) to the peak-normalized kernel
// over the region where it stays >= 0.1.
CoherenceFit fit_coherence(const BlackbodySpectrumParams& params);
double fit_coherence_width(const BlackbodySpectrumParams& params);

} // namespace ghostlight
