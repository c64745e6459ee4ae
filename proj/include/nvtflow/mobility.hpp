#ifndef NVTFLOW_MOBILITY_HPP
#define NVTFLOW_MOBILITY_HPP

#include "nvtflow/grid.hpp"
#include "nvtflow/thermo.hpp"

#include <span>
#include <vector>

namespace nvt {

enum class MobilityKind {
    Diagonal,     // M_ii = D_i n_i / RT
    MolarAverage, // full matrix built from mole diffusion coefficients
    MassAverage,  // full matrix built from mass diffusion coefficients
};

struct MobilitySpec {
    MobilityKind kind = MobilityKind::Diagonal;
    std::vector<double> d_i;  // m^2/s, Diagonal
    std::vector<double> d_ij; // M*M symmetric zero-diagonal, MolarAverage / MassAverage

    void validate(int m) const;
};

// Mobility matrix at one spatial point (row-major M*M). Symmetric positive
// semidefinite; zero rows for absent species.
std::vector<double> mobility_matrix(const MobilitySpec& spec, const MixtureSpec& mix,
                                    std::span<const double> n);

// Face-centered diffusion fluxes J_i = -sum_j M_ij grad mu_j with the
// mobility interpolated to faces; boundary-face fluxes vanish because the
// boundary face gradient is zero.
std::vector<FaceField> diffusion_flux(const MobilitySpec& spec, const MixtureSpec& mix,
                                      const std::vector<CellField>& n_fields,
                                      const std::vector<CellField>& mu_fields,
                                      const StaggeredGrid& g);

// Cell fields of every mobility entry, the building block shared by
// diffusion_flux and the scheme assemblies.
std::vector<CellField> mobility_cell_fields(const MobilitySpec& spec, const MixtureSpec& mix,
                                            const std::vector<CellField>& n_fields,
                                            const StaggeredGrid& g);

} // namespace nvt

#endif
