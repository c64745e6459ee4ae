#ifndef NVTFLOW_GRID_HPP
#define NVTFLOW_GRID_HPP

#include <vector>

namespace nvt {

enum class BoundaryMode { NoFluxNoSlip, Periodic };

// Uniform 2D MAC grid. Scalars live at cell centers, the x velocity
// component on vertical (x-normal) faces, the y component on horizontal
// faces. Face storage always includes both boundary faces; under periodic
// boundaries the wrap pair (i=0, i=nx) carries duplicated values.
struct StaggeredGrid {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    double hx = 0.0, hy = 0.0;
    BoundaryMode bc = BoundaryMode::NoFluxNoSlip;

    static StaggeredGrid make(int nx, int ny, double lx, double ly, BoundaryMode bc);

    bool periodic() const { return bc == BoundaryMode::Periodic; }
    int cells() const { return nx * ny; }
    int cell(int i, int j) const { return i + nx * j; }
    int xfaces() const { return (nx + 1) * ny; }
    int yfaces() const { return nx * (ny + 1); }
    int xface(int i, int j) const { return i + (nx + 1) * j; }
    int yface(int i, int j) const { return i + nx * j; }
    double cell_volume() const { return hx * hy; }

    double xc(int i) const { return (i + 0.5) * hx; } // cell-center coordinates
    double yc(int j) const { return (j + 0.5) * hy; }

    // Faces counted once per sum: under periodic the wrap face is owned at
    // index 0 only.
    int owned_xfaces_per_row() const { return periodic() ? nx : nx + 1; }
    int owned_yfaces_per_col() const { return periodic() ? ny : ny + 1; }

    int wrap_x(int i) const { return i < 0 ? i + nx : (i >= nx ? i - nx : i); }
    int wrap_y(int j) const { return j < 0 ? j + ny : (j >= ny ? j - ny : j); }
};

using CellField = std::vector<double>;

struct FaceField {
    std::vector<double> x; // (nx+1)*ny
    std::vector<double> y; // nx*(ny+1)
};

CellField make_cell_field(const StaggeredGrid& g, double value = 0.0);
FaceField make_face_field(const StaggeredGrid& g, double value = 0.0);

void require_cell_shape(const StaggeredGrid& g, const CellField& q, const char* who);
void require_face_shape(const StaggeredGrid& g, const FaceField& v, const char* who);

// Face gradient of a cell field: (q_R - q_L)/h on interior faces. Boundary
// faces are zero under NoFluxNoSlip (homogeneous Neumann) and wrap under
// Periodic.
FaceField grad_cc(const CellField& q, const StaggeredGrid& g);

// Cell divergence of a face field: (v_E - v_W)/hx + (v_N - v_S)/hy.
CellField div_fc(const FaceField& v, const StaggeredGrid& g);

// sum_faces (grad q).v vol + sum_cells q (div v) vol. Vanishes to round-off
// for admissible v (zero boundary normal values, or periodic).
double adjointness_residual(const CellField& q, const FaceField& v, const StaggeredGrid& g);

// Arithmetic two-cell average; boundary faces copy the adjacent interior
// cell under NoFluxNoSlip.
FaceField face_interp(const CellField& q, const StaggeredGrid& g);

// Donor-cell face values of n selected by the sign of the predictor face
// velocity; a zero predictor falls back to the centered average.
FaceField upwind_face_values(const CellField& n, const FaceField& predictor, const StaggeredGrid& g);

// div of the donor-cell fluxes n_upwind * v, donors selected by sign(v).
CellField upwind_convect(const CellField& n, const FaceField& v, const StaggeredGrid& g);

// Elementwise helpers used by the schemes.
FaceField face_multiply(const FaceField& a, const FaceField& b);
void face_axpy(FaceField& y, double alpha, const FaceField& x); // y += alpha*x

// sum over owned faces of a.b * face volume (wrap faces counted once).
double face_inner(const FaceField& a, const FaceField& b, const StaggeredGrid& g);

double cell_sum(const CellField& q, const StaggeredGrid& g); // integral: sum q * cell volume

} // namespace nvt

#endif
