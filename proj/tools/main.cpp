#include "nvtflow/error.hpp"
#include "nvtflow/simulation.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"nvtflow: multi-component two-phase compressible flow on a MAC grid"};

    std::string config_path;
    std::string preset;
    std::string scheme;
    std::string output_dir;
    long steps = -1;
    long snapshot_every = -1;
    long energy_every = -1;
    bool strict_energy = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--preset", preset, "named preset (binary_c1c5_310K, ternary_c1c5c10_323K)");
    app.add_option("--scheme", scheme, "override: coupled or componentwise");
    app.add_option("--steps", steps, "override: number of time steps");
    app.add_option("--output-dir", output_dir, "override: output directory");
    app.add_option("--snapshot-every", snapshot_every, "override: snapshot interval (0 = initial only)");
    app.add_option("--energy-every", energy_every, "override: energy record interval");
    app.add_flag("--strict-energy", strict_energy,
                 "abort with exit code 4 if the modified total energy increases");

    CLI11_PARSE(app, argc, argv);

    nvt::RunConfig cfg;
    try {
        if (!config_path.empty() && !preset.empty())
            throw nvt::ConfigError("pass either --config or --preset, not both");
        if (!config_path.empty())
            cfg = nvt::load_config_file(config_path);
        else if (!preset.empty())
            cfg = nvt::preset_config(preset);
        else
            throw nvt::ConfigError("one of --config or --preset is required");

        if (!scheme.empty()) {
            if (scheme == "coupled")
                cfg.scheme = nvt::SchemeKind::Coupled;
            else if (scheme == "componentwise")
                cfg.scheme = nvt::SchemeKind::Componentwise;
            else
                throw nvt::ConfigError("unknown scheme '" + scheme + "'");
        }
        if (steps >= 0) cfg.steps = steps;
        if (!output_dir.empty()) cfg.output.dir = output_dir;
        if (snapshot_every >= 0) cfg.output.snapshot_every = snapshot_every;
        if (energy_every >= 1) cfg.output.energy_every = energy_every;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    const nvt::RunResult result = nvt::run_simulation(cfg, strict_energy, &std::cout);
    if (result.exit_code != 0) std::cerr << result.message << "\n";
    return result.exit_code;
}
