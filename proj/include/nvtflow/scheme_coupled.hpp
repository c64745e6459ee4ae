#ifndef NVTFLOW_SCHEME_COUPLED_HPP
#define NVTFLOW_SCHEME_COUPLED_HPP

#include "nvtflow/scheme.hpp"

namespace nvt {

// Velocity-density decoupled step: the chemical potentials are eliminated
// into the mass balance equations, so the unknowns are the M new density
// fields plus the auxiliary scalar, solved as one bordered linear system;
// the momentum equation is solved afterwards with the intermediate velocity
// carrying the chemical force.

struct MassSystem {
    SparseMatrix A;                 // (M N) x (M N)
    std::vector<double> border_col; // g, multiplies the new H
    std::vector<double> border_row; // w^T entries
    double sigma = 1.0;
    std::vector<double> rhs;
    double rhs_h = 0.0;

    // assembly context reused for reconstruction
    SavTerms sav;
    std::vector<FaceField> n_hat;    // donor-cell face densities, per component
    std::vector<FaceField> mob_face; // face-interpolated mobility entries, M*M
    FaceField rho_face;
    SparseMatrix lap; // plain -div grad
};

MassSystem assemble_mass_system(const FieldState& state, const MixtureSpec& mix,
                                const InfluenceMatrix& c, const SchemeConfig& config,
                                const StaggeredGrid& g);

struct MassStepResult {
    std::vector<CellField> n_new;
    double sav_new = 0.0;
    std::vector<CellField> mu;   // level k+1
    FaceField u_star;            // intermediate velocity
    std::vector<FaceField> flux; // J_i^{k+1}
    std::vector<FaceField> n_hat;
    FaceField rho_face;
    SolveReport report;
};

MassStepResult step_mass(const FieldState& state, const MixtureSpec& mix, const InfluenceMatrix& c,
                         const SchemeConfig& config, const StaggeredGrid& g);

FaceField step_momentum(const FieldState& state, const MassStepResult& mass, const MixtureSpec& mix,
                        const SchemeConfig& config, const StaggeredGrid& g);

FieldState step_coupled(const FieldState& state, const MixtureSpec& mix, const InfluenceMatrix& c,
                        const SchemeConfig& config, const StaggeredGrid& g);

// Residuals of the discrete equations after reconstruction, relative to the
// natural scale of each equation. r_mass is the meaningful check: it feeds
// the solved densities back through the un-substituted balance equation.
struct StepAudit {
    double r_chem = 0.0;
    double r_sav = 0.0;
    double r_ustar = 0.0;
    double r_mass = 0.0;
};

StepAudit audit_mass_step(const FieldState& state, const MassStepResult& result,
                          const MixtureSpec& mix, const InfluenceMatrix& c,
                          const SchemeConfig& config, const StaggeredGrid& g);

} // namespace nvt

#endif
