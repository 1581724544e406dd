#pragma once

#include <stdexcept>
#include <string>

namespace ghostlight {

// Base of all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: geometry, apertures, config files. CLI exit code 1.
class config_error : public error {
public:
    using error::error;
};

class invalid_geometry_error : public config_error {
public:
    using config_error::config_error;
};

class singular_configuration_error : public config_error {
public:
    using config_error::config_error;
};

class invalid_aperture_error : public config_error {
public:
    using config_error::config_error;
};

// Numerical / domain failures during evaluation. CLI exit code 2.
class numeric_error : public error {
public:
    using error::error;
};

// Quadrature cutoffs too tight, fit divergence, and similar.
class accuracy_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Re(M) not positive definite in a complex quadratic form.
class quadratic_form_domain_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Principal-branch guard: Re(det) <= 0.
class branch_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Collins kernel with b = 0 (detector in the image plane of the bare matrix).
class degenerate_kernel_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class undefined_metric_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class insufficient_fringes_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Scenario outside the brute engine's validity domain.
class brute_domain_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Engine cross-validation exceeded tolerance. CLI exit code 3.
class verification_error : public error {
public:
    using error::error;
};

} // namespace ghostlight
