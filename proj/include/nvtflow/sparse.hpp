#ifndef NVTFLOW_SPARSE_HPP
#define NVTFLOW_SPARSE_HPP

#include <span>
#include <vector>

namespace nvt {

struct Triplet {
    int row;
    int col;
    double value;
};

// Square CSR matrix; duplicate (row, col) entries are summed at build time
// and column indices are sorted per row.
class SparseMatrix {
  public:
    SparseMatrix() = default;
    static SparseMatrix from_triplets(int n, std::vector<Triplet> entries);

    int size() const { return n_; }
    int nnz() const { return static_cast<int>(vals_.size()); }

    void multiply(std::span<const double> x, std::span<double> y) const; // y = A x

    // C = this * other
    SparseMatrix multiply(const SparseMatrix& other) const;

    std::span<const int> row_ptr() const { return row_ptr_; }
    std::span<const int> cols() const { return cols_; }
    std::span<const double> values() const { return vals_; }

  private:
    int n_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> cols_;
    std::vector<double> vals_;
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

struct SolverOptions {
    double tol = 1e-10; // relative residual
    int max_iter = -1;  // default 10*N
};

// Preconditioned BiCGSTAB; ILU(0) with a Jacobi fallback when the
// factorization hits a degenerate pivot.
SolveReport solve(const SparseMatrix& A, std::span<const double> rhs, std::span<double> x,
                  const SolverOptions& opts = {});

struct BorderedSolution {
    std::vector<double> x;
    double h = 0.0;
    SolveReport report;
};

// Block elimination of the bordered system [A g; w^T sigma][x; h] = [rhs; rhs_h]:
// two solves with A, then h = (rhs_h - w.x0)/(sigma - w.x1), x = x0 - h x1.
// The reported residual is that of the full bordered system.
BorderedSolution solve_bordered(const SparseMatrix& A, std::span<const double> g,
                                std::span<const double> w, double sigma,
                                std::span<const double> rhs, double rhs_h,
                                const SolverOptions& opts = {});

// Eigenvalues of a small dense symmetric matrix (cyclic Jacobi rotations),
// used for the positive-semidefiniteness checks.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int m);

} // namespace nvt

#endif
