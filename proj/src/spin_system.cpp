#include "ddclock/spin_system.hpp"

#include <cmath>
#include <stdexcept>

namespace ddclock {

int SpinSystem::index_of_m(double m) const {
    const double idx = j - m;
    const int k = static_cast<int>(std::lround(idx));
    if (std::abs(idx - k) > 1e-9 || k < 0 || k >= dim)
        throw std::invalid_argument("SpinSystem::index_of_m: m is not a magnetic quantum number of this spin");
    return k;
}

SpinSystem make_spin_system(double j) {
    const double two_j = 2.0 * j;
    if (!(j > 0.0) || std::abs(two_j - std::lround(two_j)) > 1e-9)
        throw std::invalid_argument("make_spin_system: j must be a positive half-integer");

    SpinSystem sys;
    sys.j = j;
    sys.dim = static_cast<int>(std::lround(two_j)) + 1;
    sys.m_values.resize(sys.dim);
    for (int k = 0; k < sys.dim; ++k) sys.m_values[k] = j - k;

    const int n = sys.dim;
    OperatorMatrix jplus(n);
    // <m+1| J+ |m> = sqrt(j(j+1) - m(m+1)); in the descending basis the state
    // |m> sits at index j - m, so J+ couples index k to index k-1.
    for (int k = 1; k < n; ++k) {
        const double m = sys.m_values[k];
        jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const OperatorMatrix jminus = jplus.adjoint();

    sys.jx = OperatorMatrix(n);
    sys.jy = OperatorMatrix(n);
    sys.jz = OperatorMatrix(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            sys.jx(r, c) = 0.5 * (jplus(r, c) + jminus(r, c));
            sys.jy(r, c) = cplx{0.0, -0.5} * (jplus(r, c) - jminus(r, c));
        }
    for (int k = 0; k < n; ++k) sys.jz(k, k) = sys.m_values[k];

    sys.jsq = sys.jx * sys.jx + sys.jy * sys.jy + sys.jz * sys.jz;
    return sys;
}

} // namespace ddclock
