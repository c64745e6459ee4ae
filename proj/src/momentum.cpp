#include "nvtflow/momentum.hpp"

#include "nvtflow/error.hpp"

namespace nvt {

VelocityDofMap::VelocityDofMap(const StaggeredGrid& g) : grid(g) {
    nu_ = g.periodic() ? g.nx * g.ny : (g.nx + 1) * g.ny;
    const int nv = g.periodic() ? g.nx * g.ny : g.nx * (g.ny + 1);
    total_ = nu_ + nv;
}

int VelocityDofMap::u(int i, int j) const {
    const StaggeredGrid& g = grid;
    if (g.periodic()) return g.wrap_x(i) + g.nx * g.wrap_y(j);
    return i + (g.nx + 1) * j;
}

int VelocityDofMap::v(int i, int j) const {
    const StaggeredGrid& g = grid;
    if (g.periodic()) return nu_ + g.wrap_x(i) + g.nx * g.wrap_y(j);
    return nu_ + i + g.nx * j;
}

bool VelocityDofMap::pinned_u(int i, int j) const {
    (void)j;
    return !grid.periodic() && (i == 0 || i == grid.nx);
}

bool VelocityDofMap::pinned_v(int i, int j) const {
    (void)i;
    return !grid.periodic() && (j == 0 || j == grid.ny);
}

std::vector<double> VelocityDofMap::pack(const FaceField& f) const {
    const StaggeredGrid& g = grid;
    require_face_shape(g, f, "VelocityDofMap::pack");
    std::vector<double> x(static_cast<size_t>(total_), 0.0);
    const int iend = g.periodic() ? g.nx : g.nx + 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < iend; ++i) x[u(i, j)] = f.x[g.xface(i, j)];
    const int jend = g.periodic() ? g.ny : g.ny + 1;
    for (int j = 0; j < jend; ++j)
        for (int i = 0; i < g.nx; ++i) x[v(i, j)] = f.y[g.yface(i, j)];
    return x;
}

FaceField VelocityDofMap::unpack(std::span<const double> x) const {
    const StaggeredGrid& g = grid;
    FaceField f = make_face_field(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) f.x[g.xface(i, j)] = x[u(i, j)];
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.y[g.yface(i, j)] = x[v(i, j)];
    return f;
}

namespace {

// Row accumulator with the tangential no-slip ghosts folded in: a reference
// past a wall reflects onto the first interior value with flipped sign, so
// the wall velocity itself is zero.
struct RowBuilder {
    const VelocityDofMap& dofs;
    const StaggeredGrid& g;
    std::vector<Triplet>& out;
    int row;

    void add_u(int i, int j, double coef) const {
        if (g.periodic()) {
            out.push_back({row, dofs.u(i, j), coef});
            return;
        }
        if (j < 0) {
            out.push_back({row, dofs.u(i, 0), -coef});
            return;
        }
        if (j >= g.ny) {
            out.push_back({row, dofs.u(i, g.ny - 1), -coef});
            return;
        }
        out.push_back({row, dofs.u(i, j), coef});
    }

    void add_v(int i, int j, double coef) const {
        if (g.periodic()) {
            out.push_back({row, dofs.v(i, j), coef});
            return;
        }
        if (i < 0) {
            out.push_back({row, dofs.v(0, j), -coef});
            return;
        }
        if (i >= g.nx) {
            out.push_back({row, dofs.v(g.nx - 1, j), -coef});
            return;
        }
        out.push_back({row, dofs.v(i, j), coef});
    }
};

} // namespace

SparseMatrix assemble_momentum_matrix(const VelocityDofMap& dofs, const FaceField& rho_over_dt,
                                      const FaceField& conv_flux, double eta, double lambda) {
    const StaggeredGrid& g = dofs.grid;
    require_face_shape(g, rho_over_dt, "assemble_momentum_matrix");
    require_face_shape(g, conv_flux, "assemble_momentum_matrix");
    if (!(eta > 0.0) || !(lambda > 0.0))
        throw ConfigError("momentum: viscosities eta and lambda = xi - 2/3 eta must be positive");

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(dofs.size()) * 12);
    const double hx = g.hx, hy = g.hy;

    // u rows
    const int iu_end = g.periodic() ? g.nx : g.nx + 1;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < iu_end; ++i) {
            const int row = dofs.u(i, j);
            if (dofs.pinned_u(i, j)) {
                trip.push_back({row, row, 1.0});
                continue;
            }
            RowBuilder rb{dofs, g, trip, row};
            rb.add_u(i, j, rho_over_dt.x[g.xface(i, j)]);

            // convection G.grad u, donor-cell in each direction
            const double gx = conv_flux.x[g.xface(i, j)];
            const int il = g.periodic() ? g.wrap_x(i - 1) : i - 1;
            const double gy = 0.25 * (conv_flux.y[g.yface(il, j)] + conv_flux.y[g.yface(i, j)] +
                                      conv_flux.y[g.yface(il, j + 1)] + conv_flux.y[g.yface(i, j + 1)]);
            if (gx >= 0.0) {
                rb.add_u(i, j, gx / hx);
                rb.add_u(i - 1, j, -gx / hx);
            } else {
                rb.add_u(i + 1, j, gx / hx);
                rb.add_u(i, j, -gx / hx);
            }
            if (gy >= 0.0) {
                rb.add_u(i, j, gy / hy);
                rb.add_u(i, j - 1, -gy / hy);
            } else {
                rb.add_u(i, j + 1, gy / hy);
                rb.add_u(i, j, -gy / hy);
            }

            // -(lambda + 2 eta) d/dx of the cell-centered x-derivative
            const double cxx = (lambda + 2.0 * eta) / (hx * hx);
            rb.add_u(i + 1, j, -cxx);
            rb.add_u(i, j, 2.0 * cxx);
            rb.add_u(i - 1, j, -cxx);
            // -lambda d/dx of the cell-centered dv/dy
            const double cxy = lambda / (hx * hy);
            rb.add_v(i, j + 1, -cxy);
            rb.add_v(i, j, cxy);
            rb.add_v(il, j + 1, cxy);
            rb.add_v(il, j, -cxy);
            // -eta d/dy of tau = du/dy + dv/dx at the two corner nodes
            const double cyy = eta / (hy * hy);
            rb.add_u(i, j + 1, -cyy);
            rb.add_u(i, j, 2.0 * cyy);
            rb.add_u(i, j - 1, -cyy);
            const double cyx = eta / (hx * hy);
            rb.add_v(i, j + 1, -cyx);
            rb.add_v(il, j + 1, cyx);
            rb.add_v(i, j, cyx);
            rb.add_v(il, j, -cyx);
        }
    }

    // v rows
    const int jv_end = g.periodic() ? g.ny : g.ny + 1;
    for (int j = 0; j < jv_end; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int row = dofs.v(i, j);
            if (dofs.pinned_v(i, j)) {
                trip.push_back({row, row, 1.0});
                continue;
            }
            RowBuilder rb{dofs, g, trip, row};
            rb.add_v(i, j, rho_over_dt.y[g.yface(i, j)]);

            const double gy = conv_flux.y[g.yface(i, j)];
            const int jb = g.periodic() ? g.wrap_y(j - 1) : j - 1;
            const double gx = 0.25 * (conv_flux.x[g.xface(i, jb)] + conv_flux.x[g.xface(i + 1, jb)] +
                                      conv_flux.x[g.xface(i, j)] + conv_flux.x[g.xface(i + 1, j)]);
            if (gy >= 0.0) {
                rb.add_v(i, j, gy / hy);
                rb.add_v(i, j - 1, -gy / hy);
            } else {
                rb.add_v(i, j + 1, gy / hy);
                rb.add_v(i, j, -gy / hy);
            }
            if (gx >= 0.0) {
                rb.add_v(i, j, gx / hx);
                rb.add_v(i - 1, j, -gx / hx);
            } else {
                rb.add_v(i + 1, j, gx / hx);
                rb.add_v(i, j, -gx / hx);
            }

            const double cyy = (lambda + 2.0 * eta) / (hy * hy);
            rb.add_v(i, j + 1, -cyy);
            rb.add_v(i, j, 2.0 * cyy);
            rb.add_v(i, j - 1, -cyy);
            const double cyx = lambda / (hx * hy);
            rb.add_u(i + 1, j, -cyx);
            rb.add_u(i, j, cyx);
            rb.add_u(i + 1, jb, cyx);
            rb.add_u(i, jb, -cyx);
            const double cxx = eta / (hx * hx);
            rb.add_v(i + 1, j, -cxx);
            rb.add_v(i, j, 2.0 * cxx);
            rb.add_v(i - 1, j, -cxx);
            const double cxy = eta / (hx * hy);
            rb.add_u(i + 1, j, -cxy);
            rb.add_u(i + 1, jb, cxy);
            rb.add_u(i, j, cxy);
            rb.add_u(i, jb, -cxy);
        }
    }

    return SparseMatrix::from_triplets(dofs.size(), std::move(trip));
}

std::vector<double> momentum_rhs(const VelocityDofMap& dofs, const FaceField& rho_over_dt,
                                 const FaceField& u_star) {
    const StaggeredGrid& g = dofs.grid;
    std::vector<double> rhs(static_cast<size_t>(dofs.size()), 0.0);
    const int iu_end = g.periodic() ? g.nx : g.nx + 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < iu_end; ++i)
            if (!dofs.pinned_u(i, j))
                rhs[dofs.u(i, j)] = rho_over_dt.x[g.xface(i, j)] * u_star.x[g.xface(i, j)];
    const int jv_end = g.periodic() ? g.ny : g.ny + 1;
    for (int j = 0; j < jv_end; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!dofs.pinned_v(i, j))
                rhs[dofs.v(i, j)] = rho_over_dt.y[g.yface(i, j)] * u_star.y[g.yface(i, j)];
    return rhs;
}

MomentumResult solve_momentum(const VelocityDofMap& dofs, const FaceField& rho_over_dt,
                              const FaceField& conv_flux, const FaceField& u_star, double eta,
                              double lambda, const SolverOptions& opts) {
    const SparseMatrix A = assemble_momentum_matrix(dofs, rho_over_dt, conv_flux, eta, lambda);
    const std::vector<double> rhs = momentum_rhs(dofs, rho_over_dt, u_star);
    std::vector<double> x(static_cast<size_t>(dofs.size()), 0.0);
    MomentumResult out;
    out.report = solve(A, rhs, x, opts);
    if (!out.report.converged)
        throw SolverError("momentum solve failed: relative residual " +
                          std::to_string(out.report.relative_residual) + " after " +
                          std::to_string(out.report.iterations) + " iterations");
    out.u = dofs.unpack(x);
    return out;
}

} // namespace nvt
