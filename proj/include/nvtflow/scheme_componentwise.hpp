#ifndef NVTFLOW_SCHEME_COMPONENTWISE_HPP
#define NVTFLOW_SCHEME_COMPONENTWISE_HPP

#include "nvtflow/scheme.hpp"

namespace nvt {

// Component-wise decoupled step (diagonal mobility only): components are
// advanced one at a time at fractional levels k+i/M. Each sub-solve is a
// scalar bordered system for (n_i^{k+1}, H^{k+i/M}); the intermediate
// velocity accumulates the per-component chemical forces, and the momentum
// equation is advected by the mass-fraction weighted mean of the
// intermediate velocities.

// State carried through one sweep of the component loop.
struct FractionalState {
    std::vector<CellField> n_mixed; // components < i at level k+1, others at k
    double sav_frac = 0.0;          // H^{k+i/M}
    FaceField u_star_frac;          // u_*^{k+i/M}
};

// Per-component bookkeeping used by the energy audit of the sweep.
struct SweepStage {
    double sav_frac = 0.0;
    double f_grad_mixed = 0.0;            // gradient energy at the mixed level
    double convective_work = 0.0;         // dt (n_hat grad mu, u_*^{k+i/M})
    double diffusive_dissipation = 0.0;   // dt sum M |grad mu|^2
};

struct ComponentwiseResult {
    FieldState next;
    std::vector<SweepStage> stages;
    std::vector<CellField> mu;         // mu_i^{k+i/M}
    std::vector<FaceField> flux;       // J_i^{k+i/M}
    std::vector<FaceField> n_hat;      // donor-cell face densities
    std::vector<FaceField> u_star_seq; // u_*^{k+i/M}, i = 1..M
    FaceField u_star_star;
    std::vector<SolveReport> reports;
};

// Advance component i (0-based) of the fractional state; mobility must be
// diagonal. Updates n_mixed[i], sav_frac, and u_star_frac in place.
SolveReport component_solve(int i, FractionalState& frac, const FieldState& state_k,
                            const MixtureSpec& mix, const InfluenceMatrix& c,
                            const SchemeConfig& config, const StaggeredGrid& g,
                            std::vector<CellField>* mu_out = nullptr,
                            std::vector<FaceField>* flux_out = nullptr,
                            std::vector<FaceField>* n_hat_out = nullptr,
                            SweepStage* stage = nullptr);

// Mass-fraction weighted mean of the fractional intermediate velocities.
FaceField mean_intermediate_velocity(const std::vector<FaceField>& u_star_seq,
                                     const FieldState& state_k, const MixtureSpec& mix,
                                     const StaggeredGrid& g);

ComponentwiseResult step_componentwise_detailed(const FieldState& state, const MixtureSpec& mix,
                                                const InfluenceMatrix& c, const SchemeConfig& config,
                                                const StaggeredGrid& g);

FieldState step_componentwise(const FieldState& state, const MixtureSpec& mix,
                              const InfluenceMatrix& c, const SchemeConfig& config,
                              const StaggeredGrid& g);

} // namespace nvt

#endif
