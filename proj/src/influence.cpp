#include "nvtflow/influence.hpp"

#include "nvtflow/error.hpp"
#include "nvtflow/sparse.hpp"

#include <cmath>

namespace nvt {

bool InfluenceMatrix::positive_semidefinite(double rel_tol) const {
    const std::vector<double> eig = symmetric_eigenvalues(c, m);
    return eig.front() >= -rel_tol * std::abs(eig.back());
}

InfluenceMatrix influence_matrix(const MixtureSpec& spec, const std::vector<double>& beta) {
    spec.validate();
    const int m = spec.count();
    if (static_cast<int>(beta.size()) != m * m) throw ConfigError("influence: beta must be MxM");
    for (int i = 0; i < m; ++i) {
        if (beta[static_cast<size_t>(i) * m + i] != 0.0)
            throw ConfigError("influence: beta diagonal must be zero");
        for (int j = 0; j < m; ++j) {
            const double b = beta[static_cast<size_t>(i) * m + j];
            if (b < 0.0 || b >= 1.0) throw ConfigError("influence: beta_ij must lie in [0, 1)");
            if (b != beta[static_cast<size_t>(j) * m + i])
                throw ConfigError("influence: beta must be symmetric");
        }
    }

    std::vector<double> ci(m);
    for (int i = 0; i < m; ++i) {
        const ComponentSpec& comp = spec.components[i];
        const PureParams p = pure_params(comp, spec.temperature);
        const double w = comp.acentric;
        const double gamma = -1e-16 / (1.2326 + 1.3757 * w);
        const double phi = 1e-16 / (0.9051 + 1.5410 * w);
        const double tr = spec.temperature / comp.t_crit;
        ci[i] = p.a * std::pow(p.b, 2.0 / 3.0) * (gamma * (1.0 - tr) + phi);
        if (!(ci[i] > 0.0))
            throw DomainError("influence parameter of component '" + comp.name +
                              "' is not positive at T = " + std::to_string(spec.temperature) + " K");
    }

    InfluenceMatrix out;
    out.m = m;
    out.beta = beta;
    out.c.resize(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.c[static_cast<size_t>(i) * m + j] =
                (1.0 - beta[static_cast<size_t>(i) * m + j]) * std::sqrt(ci[i] * ci[j]);
    return out;
}

double gradient_energy(const InfluenceMatrix& c, const std::vector<CellField>& n_fields,
                       const StaggeredGrid& g) {
    const int m = c.m;
    if (static_cast<int>(n_fields.size()) != m) throw ConfigError("gradient_energy: field count mismatch");
    std::vector<FaceField> grads;
    grads.reserve(m);
    for (const CellField& n : n_fields) grads.push_back(grad_cc(n, g));
    double e = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            e += c.cij(i, j) * face_inner(grads[i], grads[j], g);
    return 0.5 * e;
}

std::vector<CellField> gradient_chem_potential(const InfluenceMatrix& c,
                                               const std::vector<CellField>& n_fields,
                                               const StaggeredGrid& g) {
    const int m = c.m;
    if (static_cast<int>(n_fields.size()) != m)
        throw ConfigError("gradient_chem_potential: field count mismatch");
    std::vector<CellField> lap;
    lap.reserve(m);
    for (const CellField& n : n_fields) lap.push_back(div_fc(grad_cc(n, g), g));
    std::vector<CellField> out(m, make_cell_field(g));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double cij = c.cij(i, j);
            for (int cidx = 0; cidx < g.cells(); ++cidx) out[i][cidx] -= cij * lap[j][cidx];
        }
    return out;
}

} // namespace nvt
