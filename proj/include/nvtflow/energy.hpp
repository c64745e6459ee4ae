#ifndef NVTFLOW_ENERGY_HPP
#define NVTFLOW_ENERGY_HPP

#include "nvtflow/influence.hpp"
#include "nvtflow/scheme.hpp"

#include <span>
#include <vector>

namespace nvt {

struct EnergyRecord {
    long step = 0;
    double time = 0.0;       // s
    double e_kin = 0.0;      // J
    double f_grad = 0.0;     // J
    double h_sq = 0.0;       // J
    double f_modified = 0.0; // h_sq + f_grad - sum C_T N
    double f_original = 0.0; // integral f_b + f_grad
    double total_modified = 0.0;
    double total_original = 0.0;
};

// 1/2 sum_faces rho_face u^2 * face volume with rho interpolated the same
// way the momentum step uses it.
double kinetic_energy(const FieldState& state, const MixtureSpec& mix, const StaggeredGrid& g);

double modified_helmholtz(const FieldState& state, const InfluenceMatrix& c,
                          std::span<const double> c_t, const StaggeredGrid& g);

double original_helmholtz(const FieldState& state, const MixtureSpec& mix, const InfluenceMatrix& c,
                          const StaggeredGrid& g);

EnergyRecord make_energy_record(long step, const FieldState& state, const MixtureSpec& mix,
                                const InfluenceMatrix& c, std::span<const double> c_t,
                                const StaggeredGrid& g);

struct DissipationVerdict {
    bool pass = true;
    long first_violation_step = -1;
    double worst_increase = 0.0; // relative
};

// total_modified must be non-increasing within tol_rel per step.
DissipationVerdict assert_dissipation(std::span<const EnergyRecord> records, double tol_rel);

} // namespace nvt

#endif
