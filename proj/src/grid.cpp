#include "nvtflow/grid.hpp"

#include "nvtflow/error.hpp"

#include <cstddef>

namespace nvt {

StaggeredGrid StaggeredGrid::make(int nx, int ny, double lx, double ly, BoundaryMode bc) {
    if (nx < 2 || ny < 2) throw ConfigError("grid: nx, ny must be at least 2");
    if (!(lx > 0.0) || !(ly > 0.0)) throw ConfigError("grid: domain lengths must be positive");
    StaggeredGrid g;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.hx = lx / nx;
    g.hy = ly / ny;
    g.bc = bc;
    return g;
}

CellField make_cell_field(const StaggeredGrid& g, double value) {
    return CellField(static_cast<size_t>(g.cells()), value);
}

FaceField make_face_field(const StaggeredGrid& g, double value) {
    FaceField f;
    f.x.assign(static_cast<size_t>(g.xfaces()), value);
    f.y.assign(static_cast<size_t>(g.yfaces()), value);
    return f;
}

void require_cell_shape(const StaggeredGrid& g, const CellField& q, const char* who) {
    if (static_cast<int>(q.size()) != g.cells())
        throw ConfigError(std::string(who) + ": cell field shape mismatch");
}

void require_face_shape(const StaggeredGrid& g, const FaceField& v, const char* who) {
    if (static_cast<int>(v.x.size()) != g.xfaces() || static_cast<int>(v.y.size()) != g.yfaces())
        throw ConfigError(std::string(who) + ": face field shape mismatch");
}

FaceField grad_cc(const CellField& q, const StaggeredGrid& g) {
    require_cell_shape(g, q, "grad_cc");
    FaceField out = make_face_field(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i)
            out.x[g.xface(i, j)] = (q[g.cell(i, j)] - q[g.cell(i - 1, j)]) / g.hx;
        if (g.periodic()) {
            const double w = (q[g.cell(0, j)] - q[g.cell(g.nx - 1, j)]) / g.hx;
            out.x[g.xface(0, j)] = w;
            out.x[g.xface(g.nx, j)] = w;
        }
    }
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.y[g.yface(i, j)] = (q[g.cell(i, j)] - q[g.cell(i, j - 1)]) / g.hy;
    if (g.periodic()) {
        for (int i = 0; i < g.nx; ++i) {
            const double w = (q[g.cell(i, 0)] - q[g.cell(i, g.ny - 1)]) / g.hy;
            out.y[g.yface(i, 0)] = w;
            out.y[g.yface(i, g.ny)] = w;
        }
    }
    return out;
}

CellField div_fc(const FaceField& v, const StaggeredGrid& g) {
    require_face_shape(g, v, "div_fc");
    CellField out = make_cell_field(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out[g.cell(i, j)] = (v.x[g.xface(i + 1, j)] - v.x[g.xface(i, j)]) / g.hx +
                                (v.y[g.yface(i, j + 1)] - v.y[g.yface(i, j)]) / g.hy;
    return out;
}

double adjointness_residual(const CellField& q, const FaceField& v, const StaggeredGrid& g) {
    const FaceField gq = grad_cc(q, g);
    const CellField dv = div_fc(v, g);
    double s = face_inner(gq, v, g);
    for (int c = 0; c < g.cells(); ++c) s += q[c] * dv[c] * g.cell_volume();
    return s;
}

FaceField face_interp(const CellField& q, const StaggeredGrid& g) {
    require_cell_shape(g, q, "face_interp");
    FaceField out = make_face_field(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i)
            out.x[g.xface(i, j)] = 0.5 * (q[g.cell(i - 1, j)] + q[g.cell(i, j)]);
        if (g.periodic()) {
            const double w = 0.5 * (q[g.cell(g.nx - 1, j)] + q[g.cell(0, j)]);
            out.x[g.xface(0, j)] = w;
            out.x[g.xface(g.nx, j)] = w;
        } else {
            out.x[g.xface(0, j)] = q[g.cell(0, j)];
            out.x[g.xface(g.nx, j)] = q[g.cell(g.nx - 1, j)];
        }
    }
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 1; j < g.ny; ++j)
            out.y[g.yface(i, j)] = 0.5 * (q[g.cell(i, j - 1)] + q[g.cell(i, j)]);
        if (g.periodic()) {
            const double w = 0.5 * (q[g.cell(i, g.ny - 1)] + q[g.cell(i, 0)]);
            out.y[g.yface(i, 0)] = w;
            out.y[g.yface(i, g.ny)] = w;
        } else {
            out.y[g.yface(i, 0)] = q[g.cell(i, 0)];
            out.y[g.yface(i, g.ny)] = q[g.cell(i, g.ny - 1)];
        }
    }
    return out;
}

FaceField upwind_face_values(const CellField& n, const FaceField& predictor, const StaggeredGrid& g) {
    require_cell_shape(g, n, "upwind_face_values");
    require_face_shape(g, predictor, "upwind_face_values");
    FaceField out = make_face_field(g);
    auto pick = [](double p, double left, double right) {
        if (p > 0.0) return left;
        if (p < 0.0) return right;
        return 0.5 * (left + right);
    };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i)
            out.x[g.xface(i, j)] =
                pick(predictor.x[g.xface(i, j)], n[g.cell(i - 1, j)], n[g.cell(i, j)]);
        if (g.periodic()) {
            const double w = pick(predictor.x[g.xface(0, j)], n[g.cell(g.nx - 1, j)], n[g.cell(0, j)]);
            out.x[g.xface(0, j)] = w;
            out.x[g.xface(g.nx, j)] = w;
        } else {
            out.x[g.xface(0, j)] = n[g.cell(0, j)];
            out.x[g.xface(g.nx, j)] = n[g.cell(g.nx - 1, j)];
        }
    }
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 1; j < g.ny; ++j)
            out.y[g.yface(i, j)] =
                pick(predictor.y[g.yface(i, j)], n[g.cell(i, j - 1)], n[g.cell(i, j)]);
        if (g.periodic()) {
            const double w = pick(predictor.y[g.yface(i, 0)], n[g.cell(i, g.ny - 1)], n[g.cell(i, 0)]);
            out.y[g.yface(i, 0)] = w;
            out.y[g.yface(i, g.ny)] = w;
        } else {
            out.y[g.yface(i, 0)] = n[g.cell(i, 0)];
            out.y[g.yface(i, g.ny)] = n[g.cell(i, g.ny - 1)];
        }
    }
    return out;
}

CellField upwind_convect(const CellField& n, const FaceField& v, const StaggeredGrid& g) {
    return div_fc(face_multiply(upwind_face_values(n, v, g), v), g);
}

FaceField face_multiply(const FaceField& a, const FaceField& b) {
    FaceField out = a;
    for (size_t k = 0; k < out.x.size(); ++k) out.x[k] *= b.x[k];
    for (size_t k = 0; k < out.y.size(); ++k) out.y[k] *= b.y[k];
    return out;
}

void face_axpy(FaceField& y, double alpha, const FaceField& x) {
    for (size_t k = 0; k < y.x.size(); ++k) y.x[k] += alpha * x.x[k];
    for (size_t k = 0; k < y.y.size(); ++k) y.y[k] += alpha * x.y[k];
}

double face_inner(const FaceField& a, const FaceField& b, const StaggeredGrid& g) {
    const double vol = g.cell_volume();
    double s = 0.0;
    const int iend = g.owned_xfaces_per_row();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < iend; ++i)
            s += a.x[g.xface(i, j)] * b.x[g.xface(i, j)];
    const int jend = g.owned_yfaces_per_col();
    for (int j = 0; j < jend; ++j)
        for (int i = 0; i < g.nx; ++i)
            s += a.y[g.yface(i, j)] * b.y[g.yface(i, j)];
    return s * vol;
}

double cell_sum(const CellField& q, const StaggeredGrid& g) {
    double s = 0.0;
    for (int c = 0; c < g.cells(); ++c) s += q[c];
    return s * g.cell_volume();
}

} // namespace nvt
