#ifndef NVTFLOW_SNAPSHOT_HPP
#define NVTFLOW_SNAPSHOT_HPP

#include "nvtflow/energy.hpp"
#include "nvtflow/scheme.hpp"

#include <string>
#include <vector>

namespace nvt {

// Legacy-VTK ASCII structured-points file with the per-component molar
// densities as cell data and the cell-centered velocity vectors, plus a
// sibling CSV (same stem, .csv) with columns x, y, n_1..n_M, u, v printed to
// 17 significant digits.
void write_snapshot(const FieldState& state, const MixtureSpec& mix, const StaggeredGrid& g,
                    const std::string& path_stem);

struct SnapshotRow {
    double x, y;
    std::vector<double> n;
    double u, v;
};

std::vector<SnapshotRow> read_snapshot_csv(const std::string& path);

void write_energy_csv(const std::vector<EnergyRecord>& records, const std::string& path);

} // namespace nvt

#endif
