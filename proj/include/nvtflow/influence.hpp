#ifndef NVTFLOW_INFLUENCE_HPP
#define NVTFLOW_INFLUENCE_HPP

#include "nvtflow/grid.hpp"
#include "nvtflow/thermo.hpp"

#include <vector>

namespace nvt {

// Gradient-energy influence parameters c_ij and their binary interaction
// coefficients beta_ij.
struct InfluenceMatrix {
    int m = 0;
    std::vector<double> c;    // M*M, J m^5/mol^2
    std::vector<double> beta; // M*M

    double cij(int i, int j) const { return c[static_cast<size_t>(i) * m + j]; }

    // Smallest eigenvalue relative to the largest; the energy estimates
    // assume the matrix is positive (semi-)definite.
    bool positive_semidefinite(double rel_tol = 1e-12) const;
};

// c_i = a_i b_i^{2/3} [gamma_i (1 - T_ri) + phi_i], off-diagonals by the
// modified geometric mean c_ij = (1 - beta_ij) sqrt(c_i c_j).
InfluenceMatrix influence_matrix(const MixtureSpec& spec, const std::vector<double>& beta);

// 1/2 sum_faces sum_ij c_ij (grad n_i)(grad n_j) * face volume, built from
// the same face-gradient operator the schemes use.
double gradient_energy(const InfluenceMatrix& c, const std::vector<CellField>& n_fields,
                       const StaggeredGrid& g);

// -sum_j c_ij div(grad n_j) per component.
std::vector<CellField> gradient_chem_potential(const InfluenceMatrix& c,
                                               const std::vector<CellField>& n_fields,
                                               const StaggeredGrid& g);

} // namespace nvt

#endif
