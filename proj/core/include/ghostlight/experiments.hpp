#pragma once

#include "ghostlight/correlator.hpp"
#include "ghostlight/metrics.hpp"
#include "ghostlight/toml.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ghostlight {

struct SourceSpec {
    double sigma_I = 5.0;      // [mm]
    double sigma_g = 0.0;      // [mm]; 0 -> derive from temperature
    double temperature = 0.0;  // [K]; used when sigma_g == 0
};

struct ObjectSpec {
    std::string type = "double_slit";  // double_slit | single_slit | none
    double slit_width = 0.01;          // [mm]
    double separation = 0.03;          // [mm], center-to-center
};

struct DetectorSpec {
    double u1_ref = 0.0;
    double u2_min = -0.05;
    double u2_max = 0.05;
    int points = 201;
};

struct MetricSpec {
    VisibilityConvention convention = VisibilityConvention::intensity_product;
    double prominence = 0.1;
};

struct Scenario {
    std::string name = "custom";
    double wavelength = 7.02e-4;  // [mm]
    SourceSpec source;
    PathGeometry geometry{10.0, 40.0, 30.0, 10.0, 20.0, true};
    ObjectSpec object;
    DetectorSpec detector;
    EngineConfig engine;
    MetricSpec metrics;

    void validate() const;
    // Applies the blackbody fit when only a temperature is given.
    GaussianSchellSource resolved_source() const;
    PiecewiseAperture build_object() const;
    std::vector<double> u2_grid() const;
    // True when the lens is present and Eq.-9-style residual vanishes.
    bool imaging_configuration() const;
};

struct SweepSpec {
    std::string parameter = "source.sigma_g";
    std::vector<double> values;

    void validate() const;
};

struct ScenarioResult {
    CorrelationScan scan;
    double V = 0.0;
    double Q = 0.0;
    bool has_Q = false;  // Q only reported in an imaging configuration
    double mag = 0.0;
};

ScenarioResult run_scenario(const Scenario& s);

struct SweepRow {
    double value = 0.0;
    double V = 0.0;
    double Q = 0.0;
    bool has_V = false;
    bool has_Q = false;
    std::string error;  // empty on success
};

// One row per sweep value, in sweep order; per-row failures land in the
// error column and the run continues.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& sweep);

struct VerifyReport {
    double rtol = 1e-3;
    double dev_gamma = 0.0;
    double dev_I1 = 0.0;
    double dev_I2 = 0.0;

    double max_deviation() const;
    bool passed() const { return max_deviation() <= rtol; }
};

// Runs both engines over the scenario grid; max |delta| / max |reference|
// per observable. Refuses (brute_domain_error) outside brute validity.
VerifyReport verify(const Scenario& s, double rtol = 1e-3);

struct Preset {
    Scenario scenario;
    std::optional<SweepSpec> sweep;
};

Preset preset(const std::string& name);
std::vector<std::string> preset_names();

Scenario scenario_from_toml(const toml::Document& doc);
std::optional<SweepSpec> sweep_from_toml(const toml::Document& doc);
Scenario load_scenario(const std::string& path);

void write_scan_csv(std::ostream& out, const CorrelationScan& scan);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::string gnuplot_scan_script(const std::string& csv_path);
std::string gnuplot_sweep_script(const std::string& csv_path,
                                 const std::string& parameter);

} // namespace ghostlight
