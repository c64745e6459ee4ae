#ifndef NVTFLOW_SIMULATION_HPP
#define NVTFLOW_SIMULATION_HPP

#include "nvtflow/config.hpp"
#include "nvtflow/energy.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nvt {

// Everything a time loop needs, constructed once from a RunConfig.
struct SimulationSetup {
    StaggeredGrid grid;
    MixtureSpec mixture;
    InfluenceMatrix influence;
    SchemeConfig scheme_config;
    SchemeKind scheme = SchemeKind::Coupled;
    FieldState initial;
};

SimulationSetup prepare_simulation(const RunConfig& config, std::ostream* log = nullptr);

// One step of the configured scheme.
FieldState advance(const SimulationSetup& setup, const FieldState& state);

struct RunResult {
    int exit_code = 0; // 0 ok, 2 config, 3 step failure, 4 energy violation
    std::string message;
    std::vector<EnergyRecord> records;
    FieldState final_state;
};

// Full run with file output: energies.csv plus numbered snapshots in the
// configured output directory.
RunResult run_simulation(const RunConfig& config, bool strict_energy, std::ostream* log = nullptr);

} // namespace nvt

#endif
