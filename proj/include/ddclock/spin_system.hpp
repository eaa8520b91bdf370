#pragma once

#include <vector>

#include "ddclock/operator_matrix.hpp"

namespace ddclock {

// Angular-momentum operators for a single spin j in the descending-m basis
// (m = +j is the first basis state, so jz(0,0) = +j).
struct SpinSystem {
    double j = 0.0;
    int dim = 0;
    OperatorMatrix jx, jy, jz, jsq;
    std::vector<double> m_values; // descending, m_values[k] = j - k

    // basis index of the |m> state; throws if m is not in the manifold
    int index_of_m(double m) const;
};

// Builds jx, jy, jz, jsq from the ladder operators. j must be a positive
// half-integer (1/2, 1, 3/2, ...).
SpinSystem make_spin_system(double j);

} // namespace ddclock
