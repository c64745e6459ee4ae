#include "nvtflow/simulation.hpp"

#include "nvtflow/error.hpp"
#include "nvtflow/scheme_componentwise.hpp"
#include "nvtflow/scheme_coupled.hpp"
#include "nvtflow/snapshot.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nvt {

SimulationSetup prepare_simulation(const RunConfig& config, std::ostream* log) {
    config.validate();
    SimulationSetup s;
    s.grid = StaggeredGrid::make(config.nx, config.ny, config.lx, config.ly, config.bc);
    s.mixture = config.mixture;
    s.influence = influence_matrix(config.mixture, config.beta);
    if (!s.influence.positive_semidefinite() && log) {
        *log << "warning: influence parameter matrix is not positive semidefinite; "
                "the modified energy estimate may not hold\n";
    }
    s.scheme_config = config.scheme_config();
    s.scheme = config.scheme;
    s.initial = build_initial_state(config, s.grid);
    return s;
}

FieldState advance(const SimulationSetup& setup, const FieldState& state) {
    if (setup.scheme == SchemeKind::Coupled)
        return step_coupled(state, setup.mixture, setup.influence, setup.scheme_config, setup.grid);
    return step_componentwise(state, setup.mixture, setup.influence, setup.scheme_config, setup.grid);
}

namespace {

std::string snapshot_stem(const std::string& dir, long step) {
    std::ostringstream ss;
    ss << dir << "/snapshot_" << std::setw(6) << std::setfill('0') << step;
    return ss.str();
}

} // namespace

RunResult run_simulation(const RunConfig& config, bool strict_energy, std::ostream* log) {
    RunResult result;
    SimulationSetup setup;
    try {
        setup = prepare_simulation(config, log);
        std::filesystem::create_directories(config.output.dir);
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    }

    FieldState state = setup.initial;
    result.records.push_back(
        make_energy_record(0, state, setup.mixture, setup.influence, config.c_t, setup.grid));
    try {
        write_snapshot(state, setup.mixture, setup.grid, snapshot_stem(config.output.dir, 0));
    } catch (const std::exception& e) {
        result.exit_code = 2;
        result.message = e.what();
        return result;
    }

    for (long step = 1; step <= config.steps; ++step) {
        try {
            state = advance(setup, state);
        } catch (const std::exception& e) {
            result.message = "step " + std::to_string(step) + " failed: " + e.what();
            result.exit_code = 3;
            write_energy_csv(result.records, config.output.dir + "/energies.csv");
            if (log) *log << result.message << "\n";
            return result;
        }
        if (step % config.output.energy_every == 0 || step == config.steps) {
            result.records.push_back(make_energy_record(step, state, setup.mixture, setup.influence,
                                                        config.c_t, setup.grid));
            if (strict_energy && result.records.size() >= 2) {
                const EnergyRecord& prev = result.records[result.records.size() - 2];
                const EnergyRecord& cur = result.records.back();
                if (cur.total_modified > prev.total_modified + 1e-10 * std::abs(prev.total_modified)) {
                    result.message = "modified total energy increased at step " + std::to_string(step);
                    result.exit_code = 4;
                    write_energy_csv(result.records, config.output.dir + "/energies.csv");
                    if (log) *log << result.message << "\n";
                    return result;
                }
            }
        }
        if (config.output.snapshot_every > 0 && step % config.output.snapshot_every == 0) {
            write_snapshot(state, setup.mixture, setup.grid,
                           snapshot_stem(config.output.dir, step));
        }
    }

    write_energy_csv(result.records, config.output.dir + "/energies.csv");
    if (config.steps > 0 &&
        (config.output.snapshot_every == 0 || config.steps % config.output.snapshot_every != 0)) {
        write_snapshot(state, setup.mixture, setup.grid,
                       snapshot_stem(config.output.dir, config.steps));
    }
    result.final_state = std::move(state);
    if (log) {
        *log << "completed " << config.steps << " steps, " << result.records.size()
             << " energy records written to " << config.output.dir << "/energies.csv\n";
    }
    return result;
}

} // namespace nvt
