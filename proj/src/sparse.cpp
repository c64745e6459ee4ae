#include "nvtflow/sparse.hpp"

#include "nvtflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nvt {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(n + 1, 0);
    m.cols_.reserve(entries.size());
    m.vals_.reserve(entries.size());
    for (size_t k = 0; k < entries.size();) {
        const int r = entries[k].row;
        const int c = entries[k].col;
        if (r < 0 || r >= n || c < 0 || c >= n) throw ConfigError("sparse: triplet index out of range");
        double v = 0.0;
        while (k < entries.size() && entries[k].row == r && entries[k].col == c) {
            v += entries[k].value;
            ++k;
        }
        m.cols_.push_back(c);
        m.vals_.push_back(v);
        m.row_ptr_[r + 1] = static_cast<int>(m.cols_.size());
    }
    for (int r = 0; r < n; ++r)
        m.row_ptr_[r + 1] = std::max(m.row_ptr_[r + 1], m.row_ptr_[r]);
    return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
        throw ConfigError("sparse multiply: dimension mismatch");
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += vals_[k] * x[cols_[k]];
        y[r] = s;
    }
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
    if (other.n_ != n_) throw ConfigError("sparse product: dimension mismatch");
    std::vector<Triplet> out;
    std::vector<double> acc(n_, 0.0);
    std::vector<int> touched;
    touched.reserve(32);
    for (int r = 0; r < n_; ++r) {
        touched.clear();
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const double a = vals_[k];
            const int j = cols_[k];
            for (int kk = other.row_ptr_[j]; kk < other.row_ptr_[j + 1]; ++kk) {
                const int c = other.cols_[kk];
                if (acc[c] == 0.0) touched.push_back(c);
                acc[c] += a * other.vals_[kk];
            }
        }
        for (int c : touched) {
            out.push_back({r, c, acc[c]});
            acc[c] = 0.0;
        }
    }
    return from_triplets(n_, std::move(out));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// ILU(0) factors stored in one CSR mirror of A; degenerate pivots switch the
// whole preconditioner to Jacobi.
struct Ilu0 {
    bool usable = false;
    std::vector<int> row_ptr, cols, diag;
    std::vector<double> vals;
    std::vector<double> jacobi;

    void build(const SparseMatrix& A) {
        const int n = A.size();
        row_ptr.assign(A.row_ptr().begin(), A.row_ptr().end());
        cols.assign(A.cols().begin(), A.cols().end());
        vals.assign(A.values().begin(), A.values().end());
        diag.assign(n, -1);
        jacobi.assign(n, 1.0);
        // rows of very different scales coexist (pinned boundary rows next
        // to mass-term rows), so pivot degeneracy is judged per row
        std::vector<double> row_scale(n, 0.0);
        for (int r = 0; r < n; ++r) {
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
                if (cols[k] == r) diag[r] = k;
                row_scale[r] = std::max(row_scale[r], std::abs(vals[k]));
            }
        }
        for (int r = 0; r < n; ++r)
            if (diag[r] >= 0 && std::abs(vals[diag[r]]) > 0.0) jacobi[r] = 1.0 / vals[diag[r]];

        usable = true;
        std::vector<int> pos(n, -1);
        for (int r = 0; r < n && usable; ++r) {
            if (diag[r] < 0) {
                usable = false;
                break;
            }
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) pos[cols[k]] = k;
            for (int k = row_ptr[r]; k < row_ptr[r + 1] && usable; ++k) {
                const int c = cols[k];
                if (c >= r) break;
                const double f = vals[k] / vals[diag[c]];
                vals[k] = f;
                for (int kk = diag[c] + 1; kk < row_ptr[c + 1]; ++kk) {
                    const int p = pos[cols[kk]];
                    if (p >= 0) vals[p] -= f * vals[kk];
                }
            }
            for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) pos[cols[k]] = -1;
            if (usable && std::abs(vals[diag[r]]) <= 1e-300 + 1e-14 * row_scale[r]) usable = false;
        }
    }

    // z = M^{-1} r
    void apply(std::span<const double> r, std::span<double> z) const {
        const int n = static_cast<int>(jacobi.size());
        if (!usable) {
            for (int i = 0; i < n; ++i) z[i] = r[i] * jacobi[i];
            return;
        }
        for (int i = 0; i < n; ++i) { // forward, unit lower
            double s = r[i];
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                if (cols[k] >= i) break;
                s -= vals[k] * z[cols[k]];
            }
            z[i] = s;
        }
        for (int i = n - 1; i >= 0; --i) { // backward, upper
            double s = z[i];
            for (int k = row_ptr[i + 1] - 1; k >= row_ptr[i]; --k) {
                if (cols[k] <= i) break;
                s -= vals[k] * z[cols[k]];
            }
            z[i] = s / vals[diag[i]];
        }
    }
};

} // namespace

SolveReport solve(const SparseMatrix& A, std::span<const double> rhs, std::span<double> x,
                  const SolverOptions& opts) {
    const int n = A.size();
    if (static_cast<int>(rhs.size()) != n || static_cast<int>(x.size()) != n)
        throw ConfigError("solve: dimension mismatch");
    const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;

    SolveReport rep;
    const double bnorm = norm2(rhs);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        rep.converged = true;
        return rep;
    }

    Ilu0 pc;
    pc.build(A);

    std::vector<double> r(n), r0(n), p(n), v(n), s(n), t(n), y(n), z(n);
    std::fill(x.begin(), x.end(), 0.0);
    std::copy(rhs.begin(), rhs.end(), r.begin());
    r0 = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);

    double rnorm = norm2(r);
    rep.relative_residual = rnorm / bnorm;
    if (rep.relative_residual <= opts.tol) {
        rep.converged = true;
        return rep;
    }

    for (int it = 1; it <= max_iter; ++it) {
        const double rho_new = dot(r0, r);
        if (std::abs(rho_new) < 1e-300) { // breakdown: restart with fresh shadow residual
            r0 = r;
            rho = dot(r0, r);
            if (std::abs(rho) < 1e-300) break;
            p = r;
        } else {
            const double beta = (rho_new / rho) * (alpha / omega);
            rho = rho_new;
            for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        pc.apply(p, y);
        A.multiply(y, v);
        const double r0v = dot(r0, v);
        if (std::abs(r0v) < 1e-300) break;
        alpha = rho / r0v;
        for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm2(s) / bnorm <= opts.tol) {
            for (int i = 0; i < n; ++i) x[i] += alpha * y[i];
            A.multiply(x, t);
            for (int i = 0; i < n; ++i) r[i] = rhs[i] - t[i];
            rep.iterations = it;
            rep.relative_residual = norm2(r) / bnorm;
            rep.converged = rep.relative_residual <= opts.tol;
            if (rep.converged) return rep;
            continue;
        }
        pc.apply(s, z);
        A.multiply(z, t);
        const double tt = dot(t, t);
        if (tt < 1e-300) break;
        omega = dot(t, s) / tt;
        if (omega == 0.0) break;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * y[i] + omega * z[i];
            r[i] = s[i] - omega * t[i];
        }
        rnorm = norm2(r);
        rep.iterations = it;
        rep.relative_residual = rnorm / bnorm;
        if (rep.relative_residual <= opts.tol) {
            // true residual check guards against drift of the recurrence
            A.multiply(x, t);
            for (int i = 0; i < n; ++i) r[i] = rhs[i] - t[i];
            rep.relative_residual = norm2(r) / bnorm;
            if (rep.relative_residual <= opts.tol) {
                rep.converged = true;
                return rep;
            }
        }
    }
    A.multiply(x, t);
    for (int i = 0; i < n; ++i) r[i] = rhs[i] - t[i];
    rep.relative_residual = norm2(r) / bnorm;
    rep.converged = rep.relative_residual <= opts.tol;
    return rep;
}

BorderedSolution solve_bordered(const SparseMatrix& A, std::span<const double> g,
                                std::span<const double> w, double sigma,
                                std::span<const double> rhs, double rhs_h,
                                const SolverOptions& opts) {
    const int n = A.size();
    if (static_cast<int>(g.size()) != n || static_cast<int>(w.size()) != n ||
        static_cast<int>(rhs.size()) != n)
        throw ConfigError("solve_bordered: dimension mismatch");

    BorderedSolution out;
    std::vector<double> x0(n), x1(n);
    SolveReport r0 = solve(A, rhs, x0, opts);
    SolveReport r1 = solve(A, g, x1, opts);

    const double wx1 = dot(w, x1);
    const double pivot = sigma - wx1;
    const double scale = std::max(std::abs(sigma), std::abs(wx1));
    if (std::abs(pivot) < 1e-14 * scale)
        throw SolverError("solve_bordered: degenerate border pivot sigma - w.x1");

    out.h = (rhs_h - dot(w, x0)) / pivot;
    out.x.resize(n);
    for (int i = 0; i < n; ++i) out.x[i] = x0[i] - out.h * x1[i];

    // Residual of the full bordered system, with one refinement pass if the
    // elimination lost accuracy.
    std::vector<double> ax(n), res(n);
    double rel = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        A.multiply(out.x, ax);
        double norm_r = 0.0, norm_b = 0.0;
        for (int i = 0; i < n; ++i) {
            res[i] = rhs[i] - ax[i] - g[i] * out.h;
            norm_r += res[i] * res[i];
            norm_b += rhs[i] * rhs[i];
        }
        const double res_h = rhs_h - dot(w, out.x) - sigma * out.h;
        norm_r += res_h * res_h;
        norm_b += rhs_h * rhs_h;
        rel = norm_b > 0.0 ? std::sqrt(norm_r / norm_b) : std::sqrt(norm_r);
        if (rel <= opts.tol || pass == 1) break;
        std::vector<double> d0(n);
        SolveReport rr = solve(A, res, d0, opts);
        const double dh = (res_h - dot(w, d0)) / pivot;
        for (int i = 0; i < n; ++i) out.x[i] += d0[i] - dh * x1[i];
        out.h += dh;
        (void)rr;
    }

    out.report.iterations = r0.iterations + r1.iterations;
    out.report.relative_residual = rel;
    out.report.converged = r0.converged && r1.converged && rel <= opts.tol;
    return out;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int m) {
    if (static_cast<int>(a.size()) != m * m) throw ConfigError("symmetric_eigenvalues: shape mismatch");
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * m + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-300) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < m; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(m);
    for (int i = 0; i < m; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace nvt
