#include "nvtflow/snapshot.hpp"

#include "nvtflow/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace nvt {

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

} // namespace

void write_snapshot(const FieldState& state, const MixtureSpec& mix, const StaggeredGrid& g,
                    const std::string& path_stem) {
    const int m = mix.count();

    // cell-centered velocity from the face values
    CellField ucc = make_cell_field(g), vcc = make_cell_field(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            ucc[g.cell(i, j)] = 0.5 * (state.u.x[g.xface(i, j)] + state.u.x[g.xface(i + 1, j)]);
            vcc[g.cell(i, j)] = 0.5 * (state.u.y[g.yface(i, j)] + state.u.y[g.yface(i, j + 1)]);
        }

    {
        std::ofstream out(path_stem + ".vtk");
        if (!out) throw ConfigError("snapshot: cannot write '" + path_stem + ".vtk'");
        out << "# vtk DataFile Version 3.0\n";
        out << "molar densities and velocity, t = " << fmt(state.time) << " s\n";
        out << "ASCII\n";
        out << "DATASET STRUCTURED_POINTS\n";
        out << "DIMENSIONS " << g.nx + 1 << " " << g.ny + 1 << " 1\n";
        out << "ORIGIN 0 0 0\n";
        out << "SPACING " << fmt(g.hx) << " " << fmt(g.hy) << " 1\n";
        out << "CELL_DATA " << g.cells() << "\n";
        for (int k = 0; k < m; ++k) {
            out << "SCALARS n_" << mix.components[k].name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (int c = 0; c < g.cells(); ++c) out << fmt(state.n[k][c]) << "\n";
        }
        out << "VECTORS velocity double\n";
        for (int c = 0; c < g.cells(); ++c)
            out << fmt(ucc[c]) << " " << fmt(vcc[c]) << " 0\n";
        if (!out) throw ConfigError("snapshot: write failed for '" + path_stem + ".vtk'");
    }

    {
        std::ofstream out(path_stem + ".csv");
        if (!out) throw ConfigError("snapshot: cannot write '" + path_stem + ".csv'");
        out << "x,y";
        for (int k = 0; k < m; ++k) out << ",n_" << mix.components[k].name;
        out << ",u,v\n";
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int c = g.cell(i, j);
                out << fmt(g.xc(i)) << "," << fmt(g.yc(j));
                for (int k = 0; k < m; ++k) out << "," << fmt(state.n[k][c]);
                out << "," << fmt(ucc[c]) << "," << fmt(vcc[c]) << "\n";
            }
        }
        if (!out) throw ConfigError("snapshot: write failed for '" + path_stem + ".csv'");
    }
}

std::vector<SnapshotRow> read_snapshot_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("snapshot: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("snapshot: empty file '" + path + "'");
    int columns = 1;
    for (char ch : line)
        if (ch == ',') ++columns;
    const int m = columns - 4;
    if (m < 1) throw ConfigError("snapshot: malformed header in '" + path + "'");

    std::vector<SnapshotRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        SnapshotRow row;
        auto next = [&]() {
            if (!std::getline(ss, tok, ',')) throw ConfigError("snapshot: short row in '" + path + "'");
            return std::stod(tok);
        };
        row.x = next();
        row.y = next();
        row.n.resize(m);
        for (int k = 0; k < m; ++k) row.n[k] = next();
        row.u = next();
        row.v = next();
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_energy_csv(const std::vector<EnergyRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << "step,time_s,E_kin_J,F_grad_J,H_sq_J,F_modified_J,F_original_J,total_modified_J,"
           "total_original_J\n";
    for (const EnergyRecord& r : records) {
        out << r.step << "," << fmt(r.time) << "," << fmt(r.e_kin) << "," << fmt(r.f_grad) << ","
            << fmt(r.h_sq) << "," << fmt(r.f_modified) << "," << fmt(r.f_original) << ","
            << fmt(r.total_modified) << "," << fmt(r.total_original) << "\n";
    }
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

} // namespace nvt
