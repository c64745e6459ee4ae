#include "nvtflow/scheme_componentwise.hpp"

#include "nvtflow/error.hpp"
#include "nvtflow/momentum.hpp"

#include <cmath>

namespace nvt {

using scheme_detail::apply;
using scheme_detail::mass_density;
using scheme_detail::weighted_laplacian;

SolveReport component_solve(int i, FractionalState& frac, const FieldState& state_k,
                            const MixtureSpec& mix, const InfluenceMatrix& c,
                            const SchemeConfig& config, const StaggeredGrid& g,
                            std::vector<CellField>* mu_out, std::vector<FaceField>* flux_out,
                            std::vector<FaceField>* n_hat_out, SweepStage* stage) {
    const int m = mix.count();
    const int ncells = g.cells();
    if (config.mobility.kind != MobilityKind::Diagonal)
        throw ConfigError("component-wise scheme requires the diagonal mobility model");
    config.validate(m);
    if (i < 0 || i >= m) throw ConfigError("component_solve: component index out of range");

    const EosCoeffs eos = EosCoeffs::from(mix);
    const double inv_dt = 1.0 / config.dt;
    const double vol = g.cell_volume();

    // Denominator frozen at level k; the bulk potential of component i is
    // evaluated at the mixed level k+(i-1)/M.
    const SavTerms sav_k = sav_weights(state_k, mix, g, config.c_t);
    const std::vector<CellField> mu_b_mixed = scheme_detail::mu_b_fields(eos, frac.n_mixed, g);
    CellField w = make_cell_field(g);
    const double inv_denom = 1.0 / (2.0 * sav_k.denom);
    for (int r = 0; r < ncells; ++r) w[r] = mu_b_mixed[i][r] * inv_denom;

    const CellField rho = mass_density(state_k.n, mix, g);
    const FaceField rho_face = face_interp(rho, g);
    const FaceField n_hat = upwind_face_values(state_k.n[i], frac.u_star_frac, g);

    // diagonal mobility from the level-k densities
    CellField mob = make_cell_field(g);
    const double rt = kGasConstant * mix.temperature;
    for (int r = 0; r < ncells; ++r)
        mob[r] = config.mobility.d_i[i] * std::max(state_k.n[i][r], 0.0) / rt;
    const FaceField mob_face = face_interp(mob, g);

    FaceField kf = mob_face;
    for (size_t f = 0; f < kf.x.size(); ++f)
        kf.x[f] += config.dt * n_hat.x[f] * n_hat.x[f] / rho_face.x[f];
    for (size_t f = 0; f < kf.y.size(); ++f)
        kf.y[f] += config.dt * n_hat.y[f] * n_hat.y[f] / rho_face.y[f];

    const SparseMatrix lap = weighted_laplacian(g, make_face_field(g, 1.0));
    FaceField kc = make_face_field(g);
    face_axpy(kc, c.cij(i, i), kf);
    const SparseMatrix composed = weighted_laplacian(g, kc).multiply(lap);

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(composed.nnz()) + ncells);
    {
        const auto rp = composed.row_ptr();
        const auto cols = composed.cols();
        const auto vals = composed.values();
        for (int r = 0; r < ncells; ++r) {
            for (int k = rp[r]; k < rp[r + 1]; ++k) trip.push_back({r, cols[k], vals[k]});
            trip.push_back({r, r, inv_dt});
        }
    }
    const SparseMatrix A = SparseMatrix::from_triplets(ncells, std::move(trip));

    // border column g = -div(K grad w)
    std::vector<double> border_col(ncells);
    {
        const FaceField gw = grad_cc(w, g);
        FaceField fluxw = make_face_field(g);
        for (size_t f = 0; f < fluxw.x.size(); ++f) fluxw.x[f] += kf.x[f] * gw.x[f];
        for (size_t f = 0; f < fluxw.y.size(); ++f) fluxw.y[f] += kf.y[f] * gw.y[f];
        const CellField gi = div_fc(fluxw, g);
        for (int r = 0; r < ncells; ++r) border_col[r] = -gi[r];
    }

    // gradient coupling to the frozen components at their mixed levels
    CellField offdiag = make_cell_field(g);
    for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const CellField lap_nj = apply(lap, frac.n_mixed[j]);
        const double cij = c.cij(i, j);
        for (int r = 0; r < ncells; ++r) offdiag[r] += cij * lap_nj[r];
    }

    // Increment form: rhs_delta = rhs - A n_i^k, unknowns (delta, H^{k+i/M}).
    std::vector<double> rhs_delta(ncells);
    {
        const CellField conv = div_fc(face_multiply(n_hat, frac.u_star_frac), g);
        const CellField b_off = scheme_detail::apply_weighted_laplacian(g, kf, offdiag);
        CellField comp_n(ncells);
        composed.multiply(state_k.n[i], comp_n);
        for (int r = 0; r < ncells; ++r)
            rhs_delta[r] = -conv[r] - frac.sav_frac * border_col[r] - b_off[r] - comp_n[r];
    }

    std::vector<double> border_row(ncells);
    for (int r = 0; r < ncells; ++r) border_row[r] = -w[r] * vol;

    BorderedSolution sol =
        solve_bordered(A, border_col, border_row, 1.0, rhs_delta, frac.sav_frac, config.solver);
    if (!sol.report.converged)
        throw SolverError("component " + std::to_string(i) + " mass solve failed: relative residual " +
                          std::to_string(sol.report.relative_residual));

    const double sav_prev = frac.sav_frac;
    frac.sav_frac = sol.h;

    CellField n_new(static_cast<size_t>(ncells));
    for (int r = 0; r < ncells; ++r) n_new[r] = state_k.n[i][r] + sol.x[r];

    // mu_i at the fractional level, then the velocity and flux updates
    const double h_sum = frac.sav_frac + sav_prev;
    const CellField lap_n = apply(lap, n_new);
    CellField mu = make_cell_field(g);
    for (int r = 0; r < ncells; ++r)
        mu[r] = h_sum * w[r] + c.cij(i, i) * lap_n[r] + offdiag[r];

    const FaceField grad_mu = grad_cc(mu, g);
    for (size_t f = 0; f < frac.u_star_frac.x.size(); ++f)
        frac.u_star_frac.x[f] -= config.dt * n_hat.x[f] * grad_mu.x[f] / rho_face.x[f];
    for (size_t f = 0; f < frac.u_star_frac.y.size(); ++f)
        frac.u_star_frac.y[f] -= config.dt * n_hat.y[f] * grad_mu.y[f] / rho_face.y[f];

    frac.n_mixed[i] = std::move(n_new);

    if (mu_out) (*mu_out)[i] = mu;
    if (n_hat_out) (*n_hat_out)[i] = n_hat;
    if (flux_out) {
        FaceField flux = make_face_field(g);
        for (size_t f = 0; f < flux.x.size(); ++f) flux.x[f] = -mob_face.x[f] * grad_mu.x[f];
        for (size_t f = 0; f < flux.y.size(); ++f) flux.y[f] = -mob_face.y[f] * grad_mu.y[f];
        (*flux_out)[i] = std::move(flux);
    }
    if (stage) {
        stage->sav_frac = frac.sav_frac;
        stage->f_grad_mixed = gradient_energy(c, frac.n_mixed, g);
        FaceField force = face_multiply(n_hat, grad_mu);
        stage->convective_work = config.dt * face_inner(force, frac.u_star_frac, g);
        FaceField weighted = face_multiply(mob_face, grad_mu);
        stage->diffusive_dissipation = config.dt * face_inner(weighted, grad_mu, g);
    }
    return sol.report;
}

FaceField mean_intermediate_velocity(const std::vector<FaceField>& u_star_seq,
                                     const FieldState& state_k, const MixtureSpec& mix,
                                     const StaggeredGrid& g) {
    const int m = mix.count();
    if (static_cast<int>(u_star_seq.size()) != m)
        throw ConfigError("mean_intermediate_velocity: need all M fractional velocities");
    const CellField rho = mass_density(state_k.n, mix, g);
    const FaceField rho_face = face_interp(rho, g);
    FaceField out = make_face_field(g);
    for (int i = 0; i < m; ++i) {
        const FaceField ni_face = face_interp(state_k.n[i], g);
        const double mw = mix.components[i].molar_weight;
        for (size_t f = 0; f < out.x.size(); ++f)
            out.x[f] += mw * ni_face.x[f] / rho_face.x[f] * u_star_seq[i].x[f];
        for (size_t f = 0; f < out.y.size(); ++f)
            out.y[f] += mw * ni_face.y[f] / rho_face.y[f] * u_star_seq[i].y[f];
    }
    return out;
}

ComponentwiseResult step_componentwise_detailed(const FieldState& state, const MixtureSpec& mix,
                                                const InfluenceMatrix& c, const SchemeConfig& config,
                                                const StaggeredGrid& g) {
    const int m = mix.count();
    ComponentwiseResult out;
    out.stages.resize(m);
    out.reports.reserve(m + 1);

    FractionalState frac;
    frac.n_mixed = state.n;
    frac.sav_frac = state.sav;
    frac.u_star_frac = state.u;

    out.mu.resize(m);
    out.flux.resize(m);
    out.n_hat.resize(m);
    for (int i = 0; i < m; ++i) {
        out.reports.push_back(component_solve(i, frac, state, mix, c, config, g, &out.mu, &out.flux,
                                              &out.n_hat, &out.stages[i]));
        out.u_star_seq.push_back(frac.u_star_frac);
    }

    out.u_star_star = mean_intermediate_velocity(out.u_star_seq, state, mix, g);

    const CellField rho = mass_density(state.n, mix, g);
    const FaceField rho_face = face_interp(rho, g);
    FaceField conv = face_multiply(rho_face, out.u_star_star);
    for (int i = 0; i < m; ++i) face_axpy(conv, mix.components[i].molar_weight, out.flux[i]);

    FaceField rho_over_dt = rho_face;
    for (double& v : rho_over_dt.x) v /= config.dt;
    for (double& v : rho_over_dt.y) v /= config.dt;

    const VelocityDofMap dofs(g);
    MomentumResult mom = solve_momentum(dofs, rho_over_dt, conv, frac.u_star_frac, config.eta,
                                        config.lambda(), config.solver);
    out.reports.push_back(mom.report);

    out.next.n = std::move(frac.n_mixed);
    out.next.u = std::move(mom.u);
    out.next.sav = frac.sav_frac;
    out.next.time = state.time + config.dt;
    return out;
}

FieldState step_componentwise(const FieldState& state, const MixtureSpec& mix,
                              const InfluenceMatrix& c, const SchemeConfig& config,
                              const StaggeredGrid& g) {
    return step_componentwise_detailed(state, mix, c, config, g).next;
}

} // namespace nvt
