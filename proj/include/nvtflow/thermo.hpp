#ifndef NVTFLOW_THERMO_HPP
#define NVTFLOW_THERMO_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nvt {

inline constexpr double kGasConstant = 8.3144598; // J/(mol K)

// Critical-point data for one species (SI units).
struct ComponentSpec {
    std::string name;
    double p_crit = 0.0;       // Pa
    double t_crit = 0.0;       // K
    double acentric = 0.0;     // omega
    double molar_weight = 0.0; // kg/mol

    void validate() const;
};

// A mixture at fixed temperature: components plus the binary interaction
// coefficients k_ij of the attraction mixing rule.
struct MixtureSpec {
    std::vector<ComponentSpec> components;
    std::vector<double> k_ij; // M*M row-major, symmetric, zero diagonal
    double temperature = 0.0; // K

    int count() const { return static_cast<int>(components.size()); }
    double kij(int i, int j) const { return k_ij[static_cast<size_t>(i) * components.size() + j]; }
    void validate() const;
};

struct PureParams {
    double a; // Pa m^6/mol^2
    double b; // m^3/mol
    double m; // dimensionless
};

// Peng-Robinson pure-species parameters at temperature T.
PureParams pure_params(const ComponentSpec& c, double temperature);

struct MixtureParams {
    double a;
    double b;
};

// Van der Waals mixing rules applied to the composition n (molar densities).
MixtureParams mixture_params(const MixtureSpec& spec, std::span<const double> n);

// Temperature-resolved coefficient table so per-cell evaluations do not
// recompute the pure-species correlations.
struct EosCoeffs {
    std::vector<double> ai;   // attraction parameter per component at T
    std::vector<double> bi;   // covolume per component
    std::vector<double> a_ij; // sqrt(ai aj)(1-kij), M*M row-major
    double rt = 0.0;          // R*T

    int count() const { return static_cast<int>(ai.size()); }
    double aij(int i, int j) const { return a_ij[static_cast<size_t>(i) * ai.size() + j]; }

    static EosCoeffs from(const MixtureSpec& spec);
};

// Bulk Helmholtz free-energy density f_b(n) [J/m^3]: ideal + repulsion +
// attraction contributions of the Peng-Robinson equation of state.
double helmholtz_bulk(const EosCoeffs& eos, std::span<const double> n);
double helmholtz_bulk(const MixtureSpec& spec, std::span<const double> n);

// Analytic mu_i^b = d f_b / d n_i, including the composition dependence of
// the mixture parameters.
void chemical_potential_bulk(const EosCoeffs& eos, std::span<const double> n,
                             std::span<double> mu_out);
std::vector<double> chemical_potential_bulk(const MixtureSpec& spec, std::span<const double> n);

// Thermodynamic pressure p_b = sum_i n_i mu_i^b - f_b.
double pressure_bulk(const EosCoeffs& eos, std::span<const double> n);
double pressure_bulk(const MixtureSpec& spec, std::span<const double> n);

// Independent closed-form route: p = nRT/(1-bn) - a n^2/(1+2bn-(bn)^2).
double pressure_peng_robinson(const MixtureSpec& spec, std::span<const double> n);

struct BulkEosEval {
    double f_b;
    std::vector<double> mu_b;
    double p_b;
};

// All three bulk quantities sharing one pass over the mixing rules.
BulkEosEval evaluate_bulk(const EosCoeffs& eos, std::span<const double> n);

// Table of species used by the reference problems (methane, pentane, decane).
const std::vector<ComponentSpec>& builtin_components();
const ComponentSpec& find_component(std::string_view name);

} // namespace nvt

#endif
