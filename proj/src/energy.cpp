#include "nvtflow/energy.hpp"

#include "nvtflow/error.hpp"

#include <cmath>

namespace nvt {

double kinetic_energy(const FieldState& state, const MixtureSpec& mix, const StaggeredGrid& g) {
    const CellField rho = scheme_detail::mass_density(state.n, mix, g);
    const FaceField rho_face = face_interp(rho, g);
    const FaceField weighted = face_multiply(rho_face, state.u);
    return 0.5 * face_inner(weighted, state.u, g);
}

double modified_helmholtz(const FieldState& state, const InfluenceMatrix& c,
                          std::span<const double> c_t, const StaggeredGrid& g) {
    double e = state.sav * state.sav + gradient_energy(c, state.n, g);
    for (size_t i = 0; i < c_t.size(); ++i) e -= c_t[i] * cell_sum(state.n[i], g);
    return e;
}

double original_helmholtz(const FieldState& state, const MixtureSpec& mix, const InfluenceMatrix& c,
                          const StaggeredGrid& g) {
    const EosCoeffs eos = EosCoeffs::from(mix);
    const int m = mix.count();
    std::vector<double> point(m);
    double fb = 0.0;
    for (int cell = 0; cell < g.cells(); ++cell) {
        for (int i = 0; i < m; ++i) point[i] = state.n[i][cell];
        fb += helmholtz_bulk(eos, point);
    }
    return fb * g.cell_volume() + gradient_energy(c, state.n, g);
}

EnergyRecord make_energy_record(long step, const FieldState& state, const MixtureSpec& mix,
                                const InfluenceMatrix& c, std::span<const double> c_t,
                                const StaggeredGrid& g) {
    EnergyRecord rec;
    rec.step = step;
    rec.time = state.time;
    rec.e_kin = kinetic_energy(state, mix, g);
    rec.f_grad = gradient_energy(c, state.n, g);
    rec.h_sq = state.sav * state.sav;
    double shift = 0.0;
    for (size_t i = 0; i < c_t.size(); ++i) shift += c_t[i] * cell_sum(state.n[i], g);
    rec.f_modified = rec.h_sq + rec.f_grad - shift;
    rec.f_original = original_helmholtz(state, mix, c, g);
    rec.total_modified = rec.e_kin + rec.f_modified;
    rec.total_original = rec.e_kin + rec.f_original;
    return rec;
}

DissipationVerdict assert_dissipation(std::span<const EnergyRecord> records, double tol_rel) {
    DissipationVerdict v;
    for (size_t k = 1; k < records.size(); ++k) {
        const double prev = records[k - 1].total_modified;
        const double cur = records[k].total_modified;
        const double allowed = tol_rel * std::abs(prev);
        const double increase = cur - prev;
        if (increase > allowed) {
            v.pass = false;
            if (v.first_violation_step < 0) v.first_violation_step = records[k].step;
        }
        if (std::abs(prev) > 0.0)
            v.worst_increase = std::max(v.worst_increase, increase / std::abs(prev));
    }
    return v;
}

} // namespace nvt
