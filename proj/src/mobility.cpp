#include "nvtflow/mobility.hpp"

#include "nvtflow/error.hpp"

#include <algorithm>

namespace nvt {

void MobilitySpec::validate(int m) const {
    if (kind == MobilityKind::Diagonal) {
        if (static_cast<int>(d_i.size()) != m)
            throw ConfigError("mobility: diagonal kind needs one D_i per component");
        for (double d : d_i)
            if (!(d > 0.0)) throw ConfigError("mobility: D_i must be positive");
        return;
    }
    if (static_cast<int>(d_ij.size()) != m * m)
        throw ConfigError("mobility: D_ij must be an MxM matrix");
    for (int i = 0; i < m; ++i) {
        if (d_ij[static_cast<size_t>(i) * m + i] != 0.0)
            throw ConfigError("mobility: D_ij diagonal must be zero");
        for (int j = 0; j < m; ++j) {
            const double d = d_ij[static_cast<size_t>(i) * m + j];
            if (i != j && !(d > 0.0)) throw ConfigError("mobility: off-diagonal D_ij must be positive");
            if (d != d_ij[static_cast<size_t>(j) * m + i])
                throw ConfigError("mobility: D_ij must be symmetric");
        }
    }
}

std::vector<double> mobility_matrix(const MobilitySpec& spec, const MixtureSpec& mix,
                                    std::span<const double> n) {
    const int m = mix.count();
    spec.validate(m);
    if (static_cast<int>(n.size()) != m) throw ConfigError("mobility: composition size mismatch");
    const double rt = kGasConstant * mix.temperature;
    std::vector<double> out(static_cast<size_t>(m) * m, 0.0);
    auto at = [&](int i, int j) -> double& { return out[static_cast<size_t>(i) * m + j]; };

    switch (spec.kind) {
    case MobilityKind::Diagonal:
        for (int i = 0; i < m; ++i) at(i, i) = spec.d_i[i] * std::max(n[i], 0.0) / rt;
        break;
    case MobilityKind::MolarAverage: {
        double ntot = 0.0;
        for (int i = 0; i < m; ++i) ntot += std::max(n[i], 0.0);
        if (!(ntot > 0.0)) return out; // absent mixture carries no flux
        // each pair evaluated once so the stored matrix is symmetric to the bit
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const double w = spec.d_ij[static_cast<size_t>(i) * m + j] *
                                 (std::max(n[i], 0.0) * std::max(n[j], 0.0)) / (ntot * rt);
                at(i, j) = -w;
                at(j, i) = -w;
                at(i, i) += w;
                at(j, j) += w;
            }
        }
        break;
    }
    case MobilityKind::MassAverage: {
        double rho = 0.0;
        for (int i = 0; i < m; ++i) rho += std::max(n[i], 0.0) * mix.components[i].molar_weight;
        if (!(rho > 0.0)) return out;
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const double dij = spec.d_ij[static_cast<size_t>(i) * m + j];
                const double prod = std::max(n[i], 0.0) * std::max(n[j], 0.0);
                const double off = dij * prod / (rho * rt);
                at(i, j) = -off;
                at(j, i) = -off;
                at(i, i) += off * mix.components[j].molar_weight / mix.components[i].molar_weight;
                at(j, j) += off * mix.components[i].molar_weight / mix.components[j].molar_weight;
            }
        }
        break;
    }
    }
    return out;
}

std::vector<CellField> mobility_cell_fields(const MobilitySpec& spec, const MixtureSpec& mix,
                                            const std::vector<CellField>& n_fields,
                                            const StaggeredGrid& g) {
    const int m = mix.count();
    std::vector<CellField> out(static_cast<size_t>(m) * m, make_cell_field(g));
    std::vector<double> point(m);
    for (int c = 0; c < g.cells(); ++c) {
        for (int i = 0; i < m; ++i) point[i] = n_fields[i][c];
        const std::vector<double> mat = mobility_matrix(spec, mix, point);
        for (int k = 0; k < m * m; ++k) out[k][c] = mat[k];
    }
    return out;
}

std::vector<FaceField> diffusion_flux(const MobilitySpec& spec, const MixtureSpec& mix,
                                      const std::vector<CellField>& n_fields,
                                      const std::vector<CellField>& mu_fields,
                                      const StaggeredGrid& g) {
    const int m = mix.count();
    if (static_cast<int>(n_fields.size()) != m || static_cast<int>(mu_fields.size()) != m)
        throw ConfigError("diffusion_flux: field count mismatch");
    const std::vector<CellField> mob = mobility_cell_fields(spec, mix, n_fields, g);

    std::vector<FaceField> grad_mu;
    grad_mu.reserve(m);
    for (const CellField& mu : mu_fields) grad_mu.push_back(grad_cc(mu, g));

    std::vector<FaceField> flux(m, make_face_field(g));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const FaceField mob_face = face_interp(mob[static_cast<size_t>(i) * m + j], g);
            for (size_t k = 0; k < flux[i].x.size(); ++k)
                flux[i].x[k] -= mob_face.x[k] * grad_mu[j].x[k];
            for (size_t k = 0; k < flux[i].y.size(); ++k)
                flux[i].y[k] -= mob_face.y[k] * grad_mu[j].y[k];
        }
    }
    return flux;
}

} // namespace nvt
