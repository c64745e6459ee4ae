#ifndef NVTFLOW_SCHEME_HPP
#define NVTFLOW_SCHEME_HPP

#include "nvtflow/grid.hpp"
#include "nvtflow/influence.hpp"
#include "nvtflow/mobility.hpp"
#include "nvtflow/sparse.hpp"
#include "nvtflow/thermo.hpp"

#include <span>
#include <vector>

namespace nvt {

struct SchemeConfig {
    double dt = 0.0;          // s
    std::vector<double> c_t;  // energy-shift coefficients, J/mol
    MobilitySpec mobility;
    double xi = 0.0;  // volumetric viscosity, Pa s
    double eta = 0.0; // shear viscosity, Pa s
    SolverOptions solver;

    double lambda() const { return xi - (2.0 / 3.0) * eta; }
    void validate(int m) const;
};

// Cell molar densities, MAC velocity, the auxiliary scalar H = sqrt(F_b +
// sum C_T N), and simulation time.
struct FieldState {
    std::vector<CellField> n;
    FaceField u;
    double sav = 0.0;
    double time = 0.0;
};

struct SavTerms {
    double denom = 0.0;           // sqrt(F_b(n^k) + sum_j C_Tj N_j)
    std::vector<CellField> w;     // mu_i^b(n^k) / (2 denom)
    std::vector<CellField> mu_b;  // bulk chemical potentials at n^k
    double f_b_integral = 0.0;    // discrete integral of f_b
};

SavTerms sav_weights(const FieldState& state, const MixtureSpec& mix, const StaggeredGrid& g,
                     std::span<const double> c_t);

// Internals shared by both schemes.
namespace scheme_detail {

// q -> -div(K grad q) with the face coefficients K, as CSR.
SparseMatrix weighted_laplacian(const StaggeredGrid& g, const FaceField& K);

CellField apply(const SparseMatrix& A, const CellField& q);

// Bulk chemical-potential fields for an arbitrary set of density fields;
// throws DomainError naming the first offending cell.
std::vector<CellField> mu_b_fields(const EosCoeffs& eos, const std::vector<CellField>& n_fields,
                                   const StaggeredGrid& g);

CellField mass_density(const std::vector<CellField>& n_fields, const MixtureSpec& mix,
                       const StaggeredGrid& g); // rho = sum M_w,i n_i, checked positive

// -div(K grad q) in operator form (no matrix), bitwise-consistent face flux.
CellField apply_weighted_laplacian(const StaggeredGrid& g, const FaceField& K, const CellField& q);

} // namespace scheme_detail

} // namespace nvt

#endif
