#include "nvtflow/scheme.hpp"

#include "nvtflow/error.hpp"

#include <cmath>
#include <string>

namespace nvt {

void SchemeConfig::validate(int m) const {
    if (!(dt > 0.0)) throw ConfigError("scheme: dt must be positive");
    if (static_cast<int>(c_t.size()) != m) throw ConfigError("scheme: C_T needs one entry per component");
    for (double c : c_t)
        if (c < 0.0) throw ConfigError("scheme: C_T coefficients must be non-negative");
    if (!(eta > 0.0)) throw ConfigError("scheme: shear viscosity eta must be positive");
    if (!(xi > (2.0 / 3.0) * eta))
        throw ConfigError("scheme: volumetric viscosity must satisfy xi > 2/3 eta");
    mobility.validate(m);
}

SavTerms sav_weights(const FieldState& state, const MixtureSpec& mix, const StaggeredGrid& g,
                     std::span<const double> c_t) {
    const int m = mix.count();
    if (static_cast<int>(state.n.size()) != m) throw ConfigError("sav_weights: component count mismatch");
    const EosCoeffs eos = EosCoeffs::from(mix);

    SavTerms out;
    out.mu_b = scheme_detail::mu_b_fields(eos, state.n, g);

    std::vector<double> point(m);
    double fb = 0.0;
    for (int c = 0; c < g.cells(); ++c) {
        for (int i = 0; i < m; ++i) point[i] = state.n[i][c];
        fb += helmholtz_bulk(eos, point);
    }
    out.f_b_integral = fb * g.cell_volume();

    double radicand = out.f_b_integral;
    for (int i = 0; i < m; ++i) radicand += c_t[i] * cell_sum(state.n[i], g);
    if (!(radicand >= 0.0)) {
        throw DomainError("energy shift insufficient: F_b + sum C_T N = " + std::to_string(radicand) +
                          " is negative; raise the C_T coefficients");
    }
    out.denom = std::sqrt(radicand);
    if (!(out.denom > 0.0)) throw DomainError("sav_weights: zero SAV denominator");

    out.w.assign(m, make_cell_field(g));
    const double inv = 1.0 / (2.0 * out.denom);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < g.cells(); ++c) out.w[i][c] = out.mu_b[i][c] * inv;
    return out;
}

namespace scheme_detail {

SparseMatrix weighted_laplacian(const StaggeredGrid& g, const FaceField& K) {
    require_face_shape(g, K, "weighted_laplacian");
    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(g.cells()) * 5);
    const double ax = 1.0 / (g.hx * g.hx);
    const double ay = 1.0 / (g.hy * g.hy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int c = g.cell(i, j);
            double diag = 0.0;
            if (i + 1 < g.nx || g.periodic()) {
                const double k = K.x[g.xface(i + 1, j)] * ax;
                trip.push_back({c, g.cell(g.wrap_x(i + 1), j), -k});
                diag += k;
            }
            if (i > 0 || g.periodic()) {
                const double k = K.x[g.xface(i, j)] * ax;
                trip.push_back({c, g.cell(g.wrap_x(i - 1), j), -k});
                diag += k;
            }
            if (j + 1 < g.ny || g.periodic()) {
                const double k = K.y[g.yface(i, j + 1)] * ay;
                trip.push_back({c, g.cell(i, g.wrap_y(j + 1)), -k});
                diag += k;
            }
            if (j > 0 || g.periodic()) {
                const double k = K.y[g.yface(i, j)] * ay;
                trip.push_back({c, g.cell(i, g.wrap_y(j - 1)), -k});
                diag += k;
            }
            trip.push_back({c, c, diag});
        }
    }
    return SparseMatrix::from_triplets(g.cells(), std::move(trip));
}

CellField apply(const SparseMatrix& A, const CellField& q) {
    CellField out(q.size());
    A.multiply(q, out);
    return out;
}

std::vector<CellField> mu_b_fields(const EosCoeffs& eos, const std::vector<CellField>& n_fields,
                                   const StaggeredGrid& g) {
    const int m = eos.count();
    std::vector<CellField> mu(m, make_cell_field(g));
    std::vector<double> point(m), mu_point(m);
    for (int c = 0; c < g.cells(); ++c) {
        for (int i = 0; i < m; ++i) point[i] = n_fields[i][c];
        try {
            chemical_potential_bulk(eos, point, mu_point);
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " (cell " + std::to_string(c % g.nx) + "," +
                              std::to_string(c / g.nx) + ")");
        }
        for (int i = 0; i < m; ++i) mu[i][c] = mu_point[i];
    }
    return mu;
}

CellField mass_density(const std::vector<CellField>& n_fields, const MixtureSpec& mix,
                       const StaggeredGrid& g) {
    CellField rho = make_cell_field(g);
    for (int i = 0; i < mix.count(); ++i) {
        const double mw = mix.components[i].molar_weight;
        for (int c = 0; c < g.cells(); ++c) rho[c] += mw * n_fields[i][c];
    }
    for (int c = 0; c < g.cells(); ++c)
        if (!(rho[c] > 0.0))
            throw DomainError("mass density non-positive at cell " + std::to_string(c % g.nx) + "," +
                              std::to_string(c / g.nx));
    return rho;
}

CellField apply_weighted_laplacian(const StaggeredGrid& g, const FaceField& K, const CellField& q) {
    FaceField flux = face_multiply(K, grad_cc(q, g));
    CellField out = div_fc(flux, g);
    for (double& v : out) v = -v;
    return out;
}

} // namespace scheme_detail

} // namespace nvt
