#include <doctest.h>

#include "nvtflow/error.hpp"
#include "nvtflow/momentum.hpp"

#include <cmath>

using namespace nvt;

TEST_CASE("momentum operator on quiescent and rigid states") {
    SUBCASE("zero velocity maps to zero") {
        const StaggeredGrid g = StaggeredGrid::make(6, 6, 1.0, 1.0, BoundaryMode::NoFluxNoSlip);
        const VelocityDofMap dofs(g);
        const SparseMatrix a =
            assemble_momentum_matrix(dofs, make_face_field(g, 1.0), make_face_field(g), 1e-4, 1e-4);
        std::vector<double> x(dofs.size(), 0.0), y(dofs.size());
        a.multiply(x, y);
        for (double v : y) CHECK(v == 0.0);
    }
    SUBCASE("uniform translation on a periodic grid has no viscous force") {
        const StaggeredGrid g = StaggeredGrid::make(6, 4, 1.0, 1.0, BoundaryMode::Periodic);
        const VelocityDofMap dofs(g);
        // mass and convection terms off: pure viscous application
        const SparseMatrix a =
            assemble_momentum_matrix(dofs, make_face_field(g), make_face_field(g), 2e-4, 1e-4);
        FaceField u = make_face_field(g, 0.0);
        for (double& v : u.x) v = 0.73;
        const std::vector<double> x = dofs.pack(u);
        std::vector<double> y(dofs.size());
        a.multiply(x, y);
        for (double v : y) CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("viscous operator matches the discrete Fourier symbol") {
    const StaggeredGrid g = StaggeredGrid::make(8, 8, 1.0, 1.0, BoundaryMode::Periodic);
    const VelocityDofMap dofs(g);
    const double eta = 3e-4, lambda = 2e-4;
    const SparseMatrix a =
        assemble_momentum_matrix(dofs, make_face_field(g), make_face_field(g), eta, lambda);

    const int kx = 2, ky = 3;
    FaceField u = make_face_field(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            u.x[g.xface(i, j)] =
                std::cos(2.0 * M_PI * (kx * i * g.hx / g.lx + ky * (j + 0.5) * g.hy / g.ly));
    const std::vector<double> x = dofs.pack(u);
    std::vector<double> y(dofs.size());
    a.multiply(x, y);

    const double sx = 2.0 / (g.hx * g.hx) * (1.0 - std::cos(2.0 * M_PI * kx * g.hx / g.lx));
    const double sy = 2.0 / (g.hy * g.hy) * (1.0 - std::cos(2.0 * M_PI * ky * g.hy / g.ly));
    const double symbol = (lambda + 2.0 * eta) * sx + eta * sy;
    const FaceField out = dofs.unpack(y);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            CHECK(out.x[g.xface(i, j)] ==
                  doctest::Approx(symbol * u.x[g.xface(i, j)]).epsilon(1e-10));
}

TEST_CASE("momentum solve") {
    SUBCASE("zero right-hand side keeps the fluid at rest") {
        const StaggeredGrid g = StaggeredGrid::make(6, 6, 1.0, 1.0, BoundaryMode::NoFluxNoSlip);
        const VelocityDofMap dofs(g);
        const FaceField rho_dt = make_face_field(g, 1e3);
        const MomentumResult res = solve_momentum(dofs, rho_dt, make_face_field(g), make_face_field(g),
                                                  1e-4, 1e-4, {1e-12, 5000});
        for (double v : res.u.x) CHECK(v == doctest::Approx(0.0));
        for (double v : res.u.y) CHECK(v == doctest::Approx(0.0));
    }
    SUBCASE("recovers a prescribed interior velocity when viscosity is negligible") {
        const StaggeredGrid g = StaggeredGrid::make(5, 5, 1.0, 1.0, BoundaryMode::NoFluxNoSlip);
        const VelocityDofMap dofs(g);
        FaceField target = make_face_field(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i) target.x[g.xface(i, j)] = 0.3 + 0.01 * i - 0.02 * j;
        // rho/dt large: the mass term dominates and u -> u_star
        const FaceField rho_dt = make_face_field(g, 1e15);
        const MomentumResult res =
            solve_momentum(dofs, rho_dt, make_face_field(g), target, 1e-4, 1e-4, {1e-13, 5000});
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i)
                CHECK(res.u.x[g.xface(i, j)] ==
                      doctest::Approx(target.x[g.xface(i, j)]).epsilon(1e-9));
        // no-slip walls pinned
        for (int j = 0; j < g.ny; ++j) {
            CHECK(res.u.x[g.xface(0, j)] == 0.0);
            CHECK(res.u.x[g.xface(g.nx, j)] == 0.0);
        }
    }
    SUBCASE("viscous decay dissipates kinetic energy") {
        const StaggeredGrid g = StaggeredGrid::make(8, 8, 1.0, 1.0, BoundaryMode::NoFluxNoSlip);
        const VelocityDofMap dofs(g);
        FaceField u0 = make_face_field(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx; ++i)
                u0.x[g.xface(i, j)] = std::sin(M_PI * i * g.hx / g.lx) * std::sin(M_PI * (j + 0.5) * g.hy / g.ly);
        const FaceField rho_dt = make_face_field(g, 10.0);
        const MomentumResult res =
            solve_momentum(dofs, rho_dt, make_face_field(g), u0, 1e-2, 1e-2, {1e-12, 5000});
        double before = 0.0, after = 0.0;
        for (size_t k = 0; k < u0.x.size(); ++k) {
            before += u0.x[k] * u0.x[k];
            after += res.u.x[k] * res.u.x[k];
        }
        CHECK(after < before);
    }
}

TEST_CASE("momentum assembly rejects non-positive viscosities") {
    const StaggeredGrid g = StaggeredGrid::make(4, 4, 1.0, 1.0, BoundaryMode::NoFluxNoSlip);
    const VelocityDofMap dofs(g);
    CHECK_THROWS_AS(
        assemble_momentum_matrix(dofs, make_face_field(g, 1.0), make_face_field(g), 0.0, 1e-4),
        nvt::ConfigError);
    CHECK_THROWS_AS(
        assemble_momentum_matrix(dofs, make_face_field(g, 1.0), make_face_field(g), 1e-4, -1.0),
        nvt::ConfigError);
}
