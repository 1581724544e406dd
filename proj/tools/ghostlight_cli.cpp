// Command-line front end: scenario simulation, figure presets, parameter
// sweeps, dual-engine verification and the blackbody coherence fit.
#include <ghostlight/experiments.hpp>
#include <ghostlight/source.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerify = 3;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ghostlight::config_error("cannot write '" + path + "'");
    f << text;
}

void emit_csv(const std::string& out_path, const std::string& csv,
              const std::string& plot_script, bool emit_plot) {
    if (out_path.empty()) {
        std::cout << csv;
        return;
    }
    write_text(out_path, csv);
    if (emit_plot) write_text(out_path + ".gp", plot_script);
}

ghostlight::Scenario with_engine(ghostlight::Scenario s,
                                 const std::string& engine_name) {
    if (engine_name.empty()) return s;
    if (engine_name == "reduced")
        s.engine.engine = ghostlight::Engine::reduced;
    else if (engine_name == "brute")
        s.engine.engine = ghostlight::Engine::brute;
    else
        throw ghostlight::config_error("--engine must be 'reduced' or 'brute'");
    return s;
}

int run_single(const ghostlight::Scenario& s, const std::string& out_path,
               bool emit_plot) {
    const ghostlight::ScenarioResult res = ghostlight::run_scenario(s);
    std::ostringstream csv;
    ghostlight::write_scan_csv(csv, res.scan);
    const std::string plot_target = out_path.empty() ? "scan.csv" : out_path;
    emit_csv(out_path, csv.str(), ghostlight::gnuplot_scan_script(plot_target),
             emit_plot);
    std::cerr << "V = " << res.V;
    if (res.has_Q) std::cerr << "  Q = " << res.Q << "  mag = " << res.mag;
    std::cerr << '\n';
    return kExitOk;
}

int run_sweep_cmd(const ghostlight::Scenario& s, const ghostlight::SweepSpec& sw,
                  const std::string& out_path, bool emit_plot) {
    const auto rows = ghostlight::run_sweep(s, sw);
    std::ostringstream csv;
    ghostlight::write_sweep_csv(csv, rows);
    const std::string plot_target = out_path.empty() ? "sweep.csv" : out_path;
    emit_csv(out_path, csv.str(),
             ghostlight::gnuplot_sweep_script(plot_target, sw.parameter),
             emit_plot);
    for (const auto& r : rows)
        if (!r.error.empty())
            std::cerr << "value " << r.value << ": " << r.error << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ghostlight: classical ghost-imaging simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, engine_name, preset_name;
    bool emit_plot = false;
    double rtol = 1e-3;
    double temperature = 0.0;

    CLI::App* simulate = app.add_subcommand("simulate", "run one scenario from a config file");
    simulate->add_option("--config", config_path, "TOML scenario file")->required();
    simulate->add_option("--out", out_path, "output CSV path (default stdout)");
    simulate->add_option("--engine", engine_name, "override engine: reduced|brute");
    simulate->add_flag("--emit-plot", emit_plot, "also write a gnuplot script next to --out");

    CLI::App* preset_cmd = app.add_subcommand("preset", "run a named figure preset");
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    preset_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
    preset_cmd->add_option("--engine", engine_name, "override engine: reduced|brute");
    preset_cmd->add_flag("--emit-plot", emit_plot, "also write a gnuplot script next to --out");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run the [sweep] of a config file");
    sweep_cmd->add_option("--config", config_path, "TOML scenario file with [sweep]")->required();
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
    sweep_cmd->add_option("--engine", engine_name, "override engine: reduced|brute");
    sweep_cmd->add_flag("--emit-plot", emit_plot, "also write a gnuplot script next to --out");

    CLI::App* verify_cmd = app.add_subcommand("verify", "cross-check reduced vs brute engines");
    verify_cmd->add_option("--config", config_path, "TOML scenario file")->required();
    verify_cmd->add_option("--rtol", rtol, "acceptance tolerance (default 1e-3)");

    CLI::App* blackbody_cmd = app.add_subcommand("blackbody", "fit sigma_g for a blackbody temperature");
    blackbody_cmd->add_option("--temperature", temperature, "temperature [K]")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*simulate) {
            return run_single(with_engine(ghostlight::load_scenario(config_path),
                                          engine_name),
                              out_path, emit_plot);
        }
        if (*preset_cmd) {
            const ghostlight::Preset p = ghostlight::preset(preset_name);
            const ghostlight::Scenario s = with_engine(p.scenario, engine_name);
            if (p.sweep) return run_sweep_cmd(s, *p.sweep, out_path, emit_plot);
            return run_single(s, out_path, emit_plot);
        }
        if (*sweep_cmd) {
            const ghostlight::toml::Document doc =
                ghostlight::toml::parse_file(config_path);
            const auto sw = ghostlight::sweep_from_toml(doc);
            if (!sw)
                throw ghostlight::config_error("config has no [sweep] section");
            return run_sweep_cmd(
                with_engine(ghostlight::scenario_from_toml(doc), engine_name),
                *sw, out_path, emit_plot);
        }
        if (*verify_cmd) {
            const ghostlight::VerifyReport rep =
                ghostlight::verify(ghostlight::load_scenario(config_path), rtol);
            std::cout << "gamma deviation: " << rep.dev_gamma << '\n'
                      << "I1 deviation:    " << rep.dev_I1 << '\n'
                      << "I2 deviation:    " << rep.dev_I2 << '\n'
                      << (rep.passed() ? "PASS" : "FAIL") << " (rtol " << rep.rtol
                      << ")\n";
            return rep.passed() ? kExitOk : kExitVerify;
        }
        if (*blackbody_cmd) {
            ghostlight::BlackbodySpectrumParams bb;
            bb.temperature = temperature;
            const ghostlight::CoherenceFit fit = ghostlight::fit_coherence(bb);
            std::cout << "sigma_g = " << fit.sigma_g << " mm (fit RMS "
                      << fit.rms_residual << ")\n";
            return kExitOk;
        }
    } catch (const ghostlight::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ghostlight::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const ghostlight::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}
