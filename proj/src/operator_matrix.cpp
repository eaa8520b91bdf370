#include "ddclock/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ddclock/errors.hpp"

namespace ddclock {

OperatorMatrix::OperatorMatrix(int dim, double tolerance)
    : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim, cplx{0.0, 0.0}), tolerance_(tolerance) {
    if (dim <= 0) throw std::invalid_argument("OperatorMatrix: dimension must be positive");
}

OperatorMatrix OperatorMatrix::identity(int dim, double tolerance) {
    OperatorMatrix m(dim, tolerance);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out(dim_, tolerance_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

bool OperatorMatrix::is_hermitian() const {
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tolerance_) return false;
    return true;
}

bool OperatorMatrix::is_unitary() const {
    const OperatorMatrix gram = adjoint() * (*this);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            const cplx expect = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(gram(r, c) - expect) > tolerance_) return false;
        }
    return true;
}

bool OperatorMatrix::is_diagonal() const {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            if (r != c && std::abs((*this)(r, c)) > tolerance_) return false;
    return true;
}

double OperatorMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : entries_) m = std::max(m, std::abs(v));
    return m;
}

double OperatorMatrix::max_abs_diff(const OperatorMatrix& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
    return m;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator+=: dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator-=: dimension mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cplx scale) {
    for (cplx& v : entries_) v *= scale;
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("operator*: dimension mismatch");
    const int n = lhs.dim_;
    OperatorMatrix out(n, std::min(lhs.tolerance_, rhs.tolerance_));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const cplx a = lhs(r, k);
            if (a == cplx{0.0, 0.0}) continue;
            for (int c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

namespace {

double off_diagonal_norm(const OperatorMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

} // namespace

EigenSystem hermitian_eigendecompose(const OperatorMatrix& m) {
    if (!m.is_hermitian()) throw std::invalid_argument("hermitian_eigendecompose: input is not Hermitian to tolerance");

    const int n = m.dim();
    OperatorMatrix a = m;
    // symmetrize so rotations see an exactly Hermitian matrix
    for (int r = 0; r < n; ++r) {
        a(r, r) = cplx{a(r, r).real(), 0.0};
        for (int c = r + 1; c < n; ++c) {
            const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
    }

    OperatorMatrix v = OperatorMatrix::identity(n);
    const double scale = std::max(a.max_abs(), 1e-300);
    const double stop = 1e-15 * scale * n;
    constexpr int max_sweeps = 60;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                // unitary 2x2 rotation [[c, -conj(s)], [s, c]] zeroing (p,q)
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phase_mag = std::abs(apq);
                const cplx phase = apq / phase_mag;
                const double theta = 0.5 * std::atan2(2.0 * phase_mag, app - aqq);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * std::conj(phase);

                for (int k = 0; k < n; ++k) { // A <- R^dagger A
                    const cplx akp = a(p, k);
                    const cplx akq = a(q, k);
                    a(p, k) = c * akp + std::conj(s) * akq;
                    a(q, k) = -s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) { // A <- A R
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp + s * akq;
                    a(k, q) = -std::conj(s) * akp + c * akq;
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp + s * vkq;
                    v(k, q) = -std::conj(s) * vkp + c * vkq;
                }
                a(p, q) = std::conj(a(q, p)); // keep exact Hermiticity of the pair
            }
        }
    }
    if (sweep == max_sweeps && off_diagonal_norm(a) > stop)
        throw numerical_error("hermitian_eigendecompose: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = OperatorMatrix(n, m.tolerance());
    for (int c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    return out;
}

OperatorMatrix expm_i_hermitian(const OperatorMatrix& m, double s) {
    const EigenSystem eig = hermitian_eigendecompose(m);
    const int n = m.dim();
    OperatorMatrix out(n, m.tolerance());
    // V diag(e^{i s w}) V^dagger
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx acc{0.0, 0.0};
            for (int k = 0; k < n; ++k) {
                const cplx ph = std::polar(1.0, s * eig.eigenvalues[k]);
                acc += eig.eigenvectors(r, k) * ph * std::conj(eig.eigenvectors(c, k));
            }
            out(r, c) = acc;
        }
    return out;
}

} // namespace ddclock
