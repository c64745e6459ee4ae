#ifndef NVTFLOW_CONFIG_HPP
#define NVTFLOW_CONFIG_HPP

#include "nvtflow/influence.hpp"
#include "nvtflow/scheme.hpp"

#include <string>
#include <vector>

namespace nvt {

enum class SchemeKind { Coupled, Componentwise };

struct DropletSpec {
    double cx = 0.0, cy = 0.0; // center, m
    double sx = 0.0, sy = 0.0; // side lengths, m
    std::vector<double> density; // interior molar densities, mol/m^3
};

struct InitialSpec {
    std::vector<double> background; // mol/m^3
    std::vector<DropletSpec> droplets;
};

struct OutputSpec {
    std::string dir = "out";
    long snapshot_every = 0; // 0: only the initial and final snapshots
    long energy_every = 1;
};

struct RunConfig {
    MixtureSpec mixture;
    std::vector<double> beta; // M*M
    SchemeKind scheme = SchemeKind::Coupled;
    int nx = 40, ny = 40;
    double lx = 0.0, ly = 0.0; // m
    BoundaryMode bc = BoundaryMode::NoFluxNoSlip;
    double dt = 0.0; // s
    long steps = 0;
    SchemeConfig scheme_config() const; // dt, c_t, mobility, viscosities, solver
    std::vector<double> c_t;
    MobilitySpec mobility;
    double xi = 0.0, eta = 0.0;
    SolverOptions solver;
    InitialSpec initial;
    OutputSpec output;

    void validate() const;
};

// Parse the JSON configuration document. Unknown keys are rejected;
// quantities are converted to SI on ingestion (bar, K, g/mol, kmol/m^3, nm).
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// The two reference problems, overridable from the CLI.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Background state overwritten by the droplet interiors (sharp interface),
// zero velocity, H = sqrt(F_b(n0) + sum C_T N).
FieldState build_initial_state(const RunConfig& config, const StaggeredGrid& g);

} // namespace nvt

#endif
