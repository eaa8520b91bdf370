#pragma once

#include <complex>
#include <vector>

namespace ddclock {

using cplx = std::complex<double>;

// Dense complex square matrix, the carrier for spin operators, Hamiltonians
// and propagators. Row-major storage; property checks (Hermitian, unitary,
// diagonal) use the matrix's own tolerance.
//
// Sign convention used throughout the toolkit: propagators are written as
// exp(+i s M). The physical exp(-i H t / hbar) corresponds to negating s.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(int dim, double tolerance = 1e-12);

    static OperatorMatrix identity(int dim, double tolerance = 1e-12);

    int dim() const { return dim_; }
    double tolerance() const { return tolerance_; }
    void set_tolerance(double tol) { tolerance_ = tol; }

    cplx& operator()(int row, int col) { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
    const cplx& operator()(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }

    const std::vector<cplx>& entries() const { return entries_; }
    std::vector<cplx>& entries() { return entries_; }

    OperatorMatrix adjoint() const;

    // max elementwise |M - M^dagger| <= tolerance
    bool is_hermitian() const;
    // max elementwise |U^dagger U - I| <= tolerance
    bool is_unitary() const;
    bool is_diagonal() const;

    double max_abs() const;
    double max_abs_diff(const OperatorMatrix& other) const;

    OperatorMatrix& operator+=(const OperatorMatrix& rhs);
    OperatorMatrix& operator-=(const OperatorMatrix& rhs);
    OperatorMatrix& operator*=(cplx scale);

    friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
    friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
    friend OperatorMatrix operator*(cplx scale, OperatorMatrix m) { return m *= scale; }
    friend OperatorMatrix operator*(OperatorMatrix m, cplx scale) { return m *= scale; }
    friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

private:
    int dim_ = 0;
    std::vector<cplx> entries_;
    double tolerance_ = 1e-12;
};

struct EigenSystem {
    std::vector<double> eigenvalues; // ascending
    OperatorMatrix eigenvectors;     // columns; M = V diag(w) V^dagger
};

// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
// Matrices here are at most 16x16, where Jacobi is unconditionally stable.
// Throws std::invalid_argument for non-Hermitian input and numerical_error if
// the sweep cap is exceeded.
EigenSystem hermitian_eigendecompose(const OperatorMatrix& m);

// exp(i s M) for Hermitian M, evaluated through the eigendecomposition.
OperatorMatrix expm_i_hermitian(const OperatorMatrix& m, double s);

} // namespace ddclock
