#ifndef NVTFLOW_MOMENTUM_HPP
#define NVTFLOW_MOMENTUM_HPP

#include "nvtflow/grid.hpp"
#include "nvtflow/sparse.hpp"

namespace nvt {

// Degree-of-freedom numbering of the MAC velocity unknowns. Under periodic
// boundaries the wrap faces alias their owned partner; under no-slip the
// boundary-normal faces are kept as pinned identity rows.
struct VelocityDofMap {
    explicit VelocityDofMap(const StaggeredGrid& g);

    int size() const { return total_; }
    int u(int i, int j) const;
    int v(int i, int j) const;
    bool pinned_u(int i, int j) const;
    bool pinned_v(int i, int j) const;

    std::vector<double> pack(const FaceField& f) const;
    FaceField unpack(std::span<const double> x) const;

    const StaggeredGrid& grid;

  private:
    int nu_ = 0;
    int total_ = 0;
};

// Matrix of the semi-implicit momentum step
//   rho_f/dt u + G.grad u - grad(lambda div u) - div eta (grad u + grad u^T),
// with donor-cell upwinding of the convection derivative on the sign of the
// advecting flux G. Pass a zero rho_over_dt and zero G to obtain the pure
// (negated) viscous operator.
SparseMatrix assemble_momentum_matrix(const VelocityDofMap& dofs, const FaceField& rho_over_dt,
                                      const FaceField& conv_flux, double eta, double lambda);

// rhs = rho_f/dt * u_star on free rows, zero on pinned rows.
std::vector<double> momentum_rhs(const VelocityDofMap& dofs, const FaceField& rho_over_dt,
                                 const FaceField& u_star);

struct MomentumResult {
    FaceField u;
    SolveReport report;
};

MomentumResult solve_momentum(const VelocityDofMap& dofs, const FaceField& rho_over_dt,
                              const FaceField& conv_flux, const FaceField& u_star, double eta,
                              double lambda, const SolverOptions& opts);

} // namespace nvt

#endif
