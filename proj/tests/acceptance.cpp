// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criteria 4, 5, 6 and 9 share the two reference runs.

#include "nvtflow/energy.hpp"
#include "nvtflow/scheme_componentwise.hpp"
#include "nvtflow/scheme_coupled.hpp"
#include "nvtflow/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace nvt;

namespace {

int g_failures = 0;

class Criterion {
  public:
    explicit Criterion(std::string label) : label_(std::move(label)) {
        start_ = std::chrono::steady_clock::now();
    }
    void check(bool ok, const std::string& detail = "") {
        if (!ok) {
            pass_ = false;
            if (!detail.empty() && detail_.empty()) detail_ = detail;
        }
    }
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    ~Criterion() {
        std::printf("%s  %s [%.2f s]%s%s\n", pass_ ? "PASS" : "FAIL", label_.c_str(), seconds(),
                    detail_.empty() ? "" : " -- ", detail_.c_str());
        if (!pass_) ++g_failures;
    }

  private:
    std::string label_;
    std::string detail_;
    bool pass_ = true;
    std::chrono::steady_clock::time_point start_;
};

struct RunTrace {
    std::vector<EnergyRecord> records;
    std::vector<std::vector<double>> moles; // per record, per component
    FieldState first;
    FieldState last;
};

RunTrace trace_run(const RunConfig& cfg, long steps) {
    SimulationSetup setup = prepare_simulation(cfg);
    RunTrace tr;
    FieldState state = setup.initial;
    tr.first = state;
    auto push = [&](long step) {
        tr.records.push_back(
            make_energy_record(step, state, setup.mixture, setup.influence, cfg.c_t, setup.grid));
        std::vector<double> m;
        for (const CellField& n : state.n) m.push_back(cell_sum(n, setup.grid));
        tr.moles.push_back(std::move(m));
    };
    push(0);
    for (long s = 1; s <= steps; ++s) {
        state = advance(setup, state);
        push(s);
    }
    tr.last = std::move(state);
    return tr;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

static void criterion_1_thermo() {
    Criterion c(" 1. thermodynamic consistency: analytic mu vs finite differences (1e-6), "
                "pressure identity vs closed form (1e-10), 100 random states");
    std::mt19937 rng(171);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    const auto& table = builtin_components();
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + trial % 3;
        MixtureSpec mix;
        mix.components.assign(table.begin(), table.begin() + m);
        mix.k_ij.assign(static_cast<size_t>(m) * m, 0.0);
        mix.temperature = 280.0 + 120.0 * uf(rng);
        std::vector<double> n(m);
        for (int i = 0; i < m; ++i) n[i] = (200.0 + 8000.0 * uf(rng)) / m;

        const std::vector<double> mu = chemical_potential_bulk(mix, n);
        for (int i = 0; i < m; ++i) {
            const double h = 1e-6 * n[i];
            std::vector<double> np = n, nm = n;
            np[i] += h;
            nm[i] -= h;
            const double fd = (helmholtz_bulk(mix, np) - helmholtz_bulk(mix, nm)) / (2.0 * h);
            c.check(std::abs(mu[i] - fd) <= 1e-6 * std::abs(fd), "mu/fd mismatch");
        }
        const double p_identity = pressure_bulk(mix, n);
        const double p_closed = pressure_peng_robinson(mix, n);
        c.check(std::abs(p_identity - p_closed) <= 1e-10 * std::abs(p_closed), "pressure routes differ");
    }
    c.check(c.seconds() < 10.0, "over 10 s budget");
}

static void criterion_2_mobility() {
    Criterion c(" 2. mobility structure: symmetry exact, PSD, A2/A3 kernel vectors, 100 random states");
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uf(10.0, 9000.0);
    MixtureSpec mix;
    mix.components = builtin_components();
    mix.k_ij.assign(9, 0.0);
    mix.temperature = 323.0;
    for (MobilityKind kind : {MobilityKind::Diagonal, MobilityKind::MolarAverage, MobilityKind::MassAverage}) {
        MobilitySpec spec;
        spec.kind = kind;
        if (kind == MobilityKind::Diagonal) {
            spec.d_i.assign(3, 3e-8);
        } else {
            spec.d_ij.assign(9, 1e-8);
            for (int i = 0; i < 3; ++i) spec.d_ij[static_cast<size_t>(i) * 3 + i] = 0.0;
        }
        for (int trial = 0; trial < 100; ++trial) {
            const std::vector<double> n = {uf(rng), uf(rng), uf(rng)};
            const std::vector<double> mob = mobility_matrix(spec, mix, n);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < i; ++j)
                    c.check(mob[static_cast<size_t>(i) * 3 + j] == mob[static_cast<size_t>(j) * 3 + i],
                            "asymmetric entry");
            const std::vector<double> eig = symmetric_eigenvalues(mob, 3);
            c.check(eig.front() >= -1e-12 * std::abs(eig.back()), "negative eigenvalue");
            if (kind == MobilityKind::MolarAverage) {
                for (int i = 0; i < 3; ++i) {
                    double acc = 0.0, scale = 0.0;
                    for (int j = 0; j < 3; ++j) {
                        acc += mob[static_cast<size_t>(i) * 3 + j];
                        scale += std::abs(mob[static_cast<size_t>(i) * 3 + j]);
                    }
                    c.check(std::abs(acc) <= 1e-12 * scale, "ones vector not in the A2 kernel");
                }
            }
            if (kind == MobilityKind::MassAverage) {
                for (int i = 0; i < 3; ++i) {
                    double acc = 0.0, scale = 0.0;
                    for (int j = 0; j < 3; ++j) {
                        const double t = mob[static_cast<size_t>(i) * 3 + j] * mix.components[j].molar_weight;
                        acc += t;
                        scale += std::abs(t);
                    }
                    c.check(std::abs(acc) <= 1e-12 * scale, "molar weights not in the A3 kernel");
                }
            }
        }
    }
    c.check(c.seconds() < 5.0, "over 5 s budget");
}

static void criterion_3_operators() {
    Criterion c(" 3. operator compatibility: adjointness of grad/div within 1e-13 on 8x8..64x64");
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uf(-1.0, 1.0);
    for (int size : {8, 16, 32, 64}) {
        for (BoundaryMode bc : {BoundaryMode::NoFluxNoSlip, BoundaryMode::Periodic}) {
            const StaggeredGrid g = StaggeredGrid::make(size, size, 1.0, 1.3, bc);
            CellField q = make_cell_field(g);
            for (double& v : q) v = uf(rng);
            FaceField v = make_face_field(g);
            for (int j = 0; j < g.ny; ++j)
                for (int i = 1; i < g.nx; ++i) v.x[g.xface(i, j)] = uf(rng);
            for (int j = 1; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) v.y[g.yface(i, j)] = uf(rng);
            if (g.periodic()) {
                for (int j = 0; j < g.ny; ++j) {
                    const double w = uf(rng);
                    v.x[g.xface(0, j)] = v.x[g.xface(g.nx, j)] = w;
                }
                for (int i = 0; i < g.nx; ++i) {
                    const double w = uf(rng);
                    v.y[g.yface(i, 0)] = v.y[g.yface(i, g.ny)] = w;
                }
            }
            const double res = adjointness_residual(q, v, g);
            const FaceField gq = grad_cc(q, g);
            double scale = 0.0;
            for (size_t k = 0; k < gq.x.size(); ++k) scale += std::abs(gq.x[k] * v.x[k]);
            for (size_t k = 0; k < gq.y.size(); ++k) scale += std::abs(gq.y[k] * v.y[k]);
            scale *= g.cell_volume();
            c.check(std::abs(res) <= 1e-13 * scale, "adjointness residual too large");
        }
    }
    c.check(c.seconds() < 5.0, "over 5 s budget");
}

static void criteria_4_6_9_binary(const RunTrace& tr) {
    {
        Criterion c(" 4. scheme A energy dissipation: binary C1/C5 droplet, 200 steps, "
                    "non-increasing modified total energy, modified <= original");
        const DissipationVerdict v = assert_dissipation(tr.records, 1e-10);
        c.check(v.pass, v.pass ? "" : "increase at step " + std::to_string(v.first_violation_step));
        for (size_t k = 1; k < tr.records.size(); ++k)
            c.check(tr.records[k].total_modified <=
                        tr.records[k].total_original + 1e-10 * std::abs(tr.records[k].total_original),
                    "modified energy above the original");
    }
}

static void criterion_5_ternary(const RunTrace& tr, long check_steps) {
    Criterion c(" 5. scheme B energy dissipation: ternary C1/C5/C10 droplets, first " +
                std::to_string(check_steps) + " of " + std::to_string(tr.records.size() - 1) +
                " steps non-increasing");
    std::vector<EnergyRecord> head(tr.records.begin(), tr.records.begin() + check_steps + 1);
    const DissipationVerdict v = assert_dissipation(head, 1e-10);
    c.check(v.pass, v.pass ? "" : "increase at step " + std::to_string(v.first_violation_step));
}

static void criterion_6_conservation(const RunTrace& binary, const RunTrace& ternary) {
    Criterion c(" 6. conservation: per-component mole drift <= 1e-8 per step and <= 1e-6 over each run");
    for (const RunTrace* tr : {&binary, &ternary}) {
        const size_t m = tr->moles.front().size();
        for (size_t i = 0; i < m; ++i) {
            const double n0 = tr->moles.front()[i];
            for (size_t k = 1; k < tr->moles.size(); ++k) {
                c.check(std::abs(tr->moles[k][i] - tr->moles[k - 1][i]) <= 1e-8 * n0,
                        "per-step drift of component " + std::to_string(i));
            }
            c.check(std::abs(tr->moles.back()[i] - n0) <= 1e-6 * n0,
                    "full-run drift of component " + std::to_string(i));
        }
    }
}

static void criterion_7_equivalence() {
    Criterion c(" 7. scheme equivalence at M = 1: methane droplet, 50 steps, fields within 1e-8");
    MixtureSpec mix;
    mix.components = {find_component("methane")};
    mix.k_ij.assign(1, 0.0);
    mix.temperature = 310.0;
    std::vector<double> beta = {0.0};
    const InfluenceMatrix infl = influence_matrix(mix, beta);
    const StaggeredGrid g = StaggeredGrid::make(24, 24, 20e-9, 20e-9, BoundaryMode::NoFluxNoSlip);
    SchemeConfig cfg;
    cfg.dt = 1e-12;
    cfg.c_t = {0.0};
    cfg.mobility.kind = MobilityKind::Diagonal;
    cfg.mobility.d_i = {1e-8};
    cfg.xi = 1e-4;
    cfg.eta = 1e-4;
    cfg.solver.tol = 1e-12;
    cfg.solver.max_iter = 100000;

    FieldState a;
    a.n.push_back(make_cell_field(g, 7430.2));
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (std::abs(g.xc(i) - 10e-9) <= 5e-9 && std::abs(g.yc(j) - 10e-9) <= 5e-9)
                a.n[0][g.cell(i, j)] = 9500.0;
    a.u = make_face_field(g);
    {
        const EosCoeffs eos = EosCoeffs::from(mix);
        double fb = 0.0;
        for (int cell = 0; cell < g.cells(); ++cell) {
            const std::vector<double> pt = {a.n[0][cell]};
            fb += helmholtz_bulk(eos, pt);
        }
        a.sav = std::sqrt(fb * g.cell_volume());
    }
    FieldState b = a;
    for (int s = 0; s < 50; ++s) {
        a = step_coupled(a, mix, infl, cfg, g);
        b = step_componentwise(b, mix, infl, cfg, g);
    }
    const double nscale = max_abs(b.n[0]);
    double uscale = std::max(max_abs(b.u.x), max_abs(b.u.y));
    for (int cell = 0; cell < g.cells(); ++cell)
        c.check(std::abs(a.n[0][cell] - b.n[0][cell]) <= 1e-8 * nscale, "density fields differ");
    for (size_t f = 0; f < a.u.x.size(); ++f)
        c.check(std::abs(a.u.x[f] - b.u.x[f]) <= 1e-8 * uscale, "u fields differ");
    for (size_t f = 0; f < a.u.y.size(); ++f)
        c.check(std::abs(a.u.y[f] - b.u.y[f]) <= 1e-8 * uscale, "v fields differ");
    c.check(std::abs(a.sav - b.sav) <= 1e-8 * b.sav, "auxiliary scalars differ");
}

static void criterion_8_fixed_point() {
    Criterion c(" 8. fixed point: uniform quiescent states invariant for 10 steps, both schemes");
    const double tol = 1e-12;
    // scheme A with the full binary mobility tensor
    {
        RunConfig cfg = preset_config("binary_c1c5_310K");
        cfg.initial.droplets.clear();
        cfg.solver.tol = tol;
        SimulationSetup setup = prepare_simulation(cfg);
        FieldState s = setup.initial;
        const double h0 = s.sav;
        for (int k = 0; k < 10; ++k) s = advance(setup, s);
        for (int i = 0; i < 2; ++i)
            for (double v : s.n[i])
                c.check(std::abs(v - cfg.initial.background[i]) <= 10.0 * tol * cfg.initial.background[i],
                        "scheme A density drift");
        c.check(std::abs(s.sav - h0) <= 10.0 * tol * h0, "scheme A auxiliary drift");
        c.check(std::max(max_abs(s.u.x), max_abs(s.u.y)) <= 1e-10, "scheme A velocity noise");
    }
    // scheme B with diagonal mobility
    {
        RunConfig cfg = preset_config("ternary_c1c5c10_323K");
        cfg.initial.droplets.clear();
        cfg.solver.tol = tol;
        SimulationSetup setup = prepare_simulation(cfg);
        FieldState s = setup.initial;
        const double h0 = s.sav;
        for (int k = 0; k < 10; ++k) s = advance(setup, s);
        for (int i = 0; i < 3; ++i)
            for (double v : s.n[i])
                c.check(std::abs(v - cfg.initial.background[i]) <= 10.0 * tol * cfg.initial.background[i],
                        "scheme B density drift");
        c.check(std::abs(s.sav - h0) <= 10.0 * tol * h0, "scheme B auxiliary drift");
        c.check(std::max(max_abs(s.u.x), max_abs(s.u.y)) <= 1e-10, "scheme B velocity noise");
    }
}

static void criterion_9_qualitative(const RunTrace& binary, const RunTrace& ternary) {
    Criterion c(" 9. qualitative dynamics: droplet corner occupancy decreases (binary), two "
                "droplets merge into one region (ternary, 1000 steps)");
    // pentane occupancy at the four corner cells of the initial 20x20 block
    const int nx = 40;
    auto corner_metric = [&](const FieldState& s) {
        double sum = 0.0;
        for (int i : {10, 29})
            for (int j : {10, 29}) sum += s.n[1][i + nx * j];
        return sum;
    };
    const double m0 = corner_metric(binary.first);
    const double m200 = corner_metric(binary.last);
    c.check(m200 < m0, "corner occupancy did not decrease");
    c.check(binary.records[80].e_kin > 0.0, "no flow at step 80");

    // connected decane-rich regions before and after
    auto components_of = [&](const FieldState& s) {
        const double thresh = 0.5 * (184.0 + 1433.0);
        std::vector<char> mask(1600), seen(1600, 0);
        for (int k = 0; k < 1600; ++k) mask[k] = s.n[2][k] > thresh;
        int comps = 0;
        std::vector<int> stack;
        for (int start = 0; start < 1600; ++start) {
            if (!mask[start] || seen[start]) continue;
            ++comps;
            stack.push_back(start);
            seen[start] = 1;
            while (!stack.empty()) {
                const int cell = stack.back();
                stack.pop_back();
                const int i = cell % nx, j = cell / nx;
                const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
                for (const auto& [ni, nj] : nb) {
                    if (ni < 0 || ni >= nx || nj < 0 || nj >= nx) continue;
                    const int idx = ni + nx * nj;
                    if (mask[idx] && !seen[idx]) {
                        seen[idx] = 1;
                        stack.push_back(idx);
                    }
                }
            }
        }
        return comps;
    };
    c.check(components_of(ternary.first) == 2, "initial state should hold two droplets");
    c.check(components_of(ternary.last) == 1, "droplets did not merge");
}

static void criterion_10_bordered() {
    Criterion c("10. bordered solve equals the monolithic solve within 1e-10, N <= 200");
    std::mt19937 rng(515);
    std::uniform_real_distribution<double> uf(-1.0, 1.0);
    for (int n : {50, 120, 200}) {
        std::vector<Triplet> t;
        std::vector<double> dense(static_cast<size_t>(n + 1) * (n + 1), 0.0);
        auto dset = [&](int r, int cc, double v) { dense[static_cast<size_t>(r) * (n + 1) + cc] += v; };
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < 4; ++k) {
                const int j = static_cast<int>(rng() % n);
                const double v = uf(rng);
                t.push_back({i, j, v});
                dset(i, j, v);
            }
            t.push_back({i, i, 6.0});
            dset(i, i, 6.0);
        }
        const SparseMatrix a = SparseMatrix::from_triplets(n, t);
        std::vector<double> g(n), w(n), rhs(n);
        for (double& v : g) v = uf(rng);
        for (double& v : w) v = uf(rng);
        for (double& v : rhs) v = uf(rng);
        const double sigma = 4.0, rhs_h = uf(rng);
        for (int i = 0; i < n; ++i) {
            dset(i, n, g[i]);
            dset(n, i, w[i]);
        }
        dset(n, n, sigma);

        const BorderedSolution s = solve_bordered(a, g, w, sigma, rhs, rhs_h, {1e-13, 20 * n});
        c.check(s.report.converged, "bordered solve did not converge");

        // dense Gauss elimination of the monolithic system
        std::vector<double> b(rhs);
        b.push_back(rhs_h);
        const int dim = n + 1;
        for (int k = 0; k < dim; ++k) {
            int piv = k;
            for (int r = k + 1; r < dim; ++r)
                if (std::abs(dense[static_cast<size_t>(r) * dim + k]) >
                    std::abs(dense[static_cast<size_t>(piv) * dim + k]))
                    piv = r;
            for (int cc = 0; cc < dim; ++cc)
                std::swap(dense[static_cast<size_t>(k) * dim + cc], dense[static_cast<size_t>(piv) * dim + cc]);
            std::swap(b[k], b[piv]);
            for (int r = k + 1; r < dim; ++r) {
                const double f = dense[static_cast<size_t>(r) * dim + k] / dense[static_cast<size_t>(k) * dim + k];
                for (int cc = k; cc < dim; ++cc)
                    dense[static_cast<size_t>(r) * dim + cc] -= f * dense[static_cast<size_t>(k) * dim + cc];
                b[r] -= f * b[k];
            }
        }
        std::vector<double> mono(dim);
        for (int r = dim - 1; r >= 0; --r) {
            double acc = b[r];
            for (int cc = r + 1; cc < dim; ++cc) acc -= dense[static_cast<size_t>(r) * dim + cc] * mono[cc];
            mono[r] = acc / dense[static_cast<size_t>(r) * dim + r];
        }
        double scale = std::abs(mono[n]);
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(mono[i]));
        for (int i = 0; i < n; ++i)
            c.check(std::abs(s.x[i] - mono[i]) <= 1e-10 * scale, "solution vectors differ");
        c.check(std::abs(s.h - mono[n]) <= 1e-10 * scale, "border scalars differ");
    }
    c.check(c.seconds() < 5.0, "over 5 s budget");
}

int main() {
    std::printf("acceptance suite: %s\n", "multi-component two-phase flow simulator");

    criterion_1_thermo();
    criterion_2_mobility();
    criterion_3_operators();

    std::printf("running the binary reference problem (200 steps)...\n");
    const RunTrace binary = trace_run(preset_config("binary_c1c5_310K"), 200);
    std::printf("running the ternary reference problem (1000 steps)...\n");
    const RunTrace ternary = trace_run(preset_config("ternary_c1c5c10_323K"), 1000);

    criteria_4_6_9_binary(binary);
    criterion_5_ternary(ternary, 200);
    criterion_6_conservation(binary, ternary);
    criterion_7_equivalence();
    criterion_8_fixed_point();
    criterion_9_qualitative(binary, ternary);
    criterion_10_bordered();

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
