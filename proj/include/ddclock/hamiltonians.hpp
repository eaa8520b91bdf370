#pragma once

#include "ddclock/operator_matrix.hpp"
#include "ddclock/spin_system.hpp"

namespace ddclock {

// Physical parameters of one piecewise-constant evolution interval, in the
// frame co-rotating with the RF drive. All values are angular frequencies
// (rad/s); configuration files carry ordinary Hz and are multiplied by 2*pi
// once at load.
struct DriveParams {
    double delta = 0.0; // detuning of the drive from the Larmor frequency
    double q_j = 0.0;   // quadrupole coupling
    double omega = 0.0; // Rabi frequency, >= 0; 0 means free evolution
    double phi = 0.0;   // drive phase

    void validate() const;
};

// H/hbar = delta Jz + q_j (J^2 - 3 Jz^2) + omega (cos(phi) Jx + sin(phi) Jy)
OperatorMatrix interaction_hamiltonian(const SpinSystem& sys, const DriveParams& p);

struct VhDecomposition {
    OperatorMatrix v; // zero diagonal
    OperatorMatrix h; // diagonal
};

// Splits the Rabi-normalized error generator of the continuous rotary drive
// into its strictly off-diagonal part V and diagonal part H:
//   V = -p_delta Jy - (3 p_q / 2)(Jy^2 - Jx^2)
//   H = p_q (J^2 - (3/2)(Jy^2 + Jx^2))
// with p_delta = delta/omega0 and p_q = q_j/omega0.
VhDecomposition vh_decomposition(const SpinSystem& sys, double p_delta, double p_q);

} // namespace ddclock
