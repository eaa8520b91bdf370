#pragma once

#include <vector>

#include "ddclock/hamiltonians.hpp"
#include "ddclock/operator_matrix.hpp"
#include "ddclock/sequences.hpp"
#include "ddclock/spin_system.hpp"

namespace ddclock {

// Evolution model for finite-duration drive segments.
//
// exact     the segment exponentiates the full interaction Hamiltonian
//           delta Jz + q (J^2 - 3 Jz^2) + omega J_d.
// averaged  the segment keeps only the part of the quadrupole term that
//           commutes with the drive axis, q ((3/2) J_d^2 - J^2/2) + omega J_d;
//           the detuning and the non-commuting quadrupole part average out
//           under the strong drive. In this model the rotary-echo sequence
//           cancels the quadrupole phase identically.
//
// Ideal (instantaneous) pulse segments are pure rotations exp(i area J_d) in
// both models.
enum class PulseModel { exact, averaged };

struct PropagationResult {
    OperatorMatrix unitary;
    std::vector<cplx> per_m_amplitude; // <m|U|m> in the descending-m basis
    std::vector<double> per_m_phase;   // principal value of arg <m|U|m>
};

// Piecewise-constant propagator: the product of segment exponentials with the
// rightmost factor earliest in time. env supplies the free parameters
// (delta, q_j) per segment; the drive amplitude and phase come from the
// segment itself.
PropagationResult propagate(const SpinSystem& sys, const PulseSequence& seq,
                            const std::vector<DriveParams>& env, PulseModel model = PulseModel::exact);

// Convenience overload: the same (delta, q_j) for every segment.
PropagationResult propagate(const SpinSystem& sys, const PulseSequence& seq,
                            const DriveParams& env, PulseModel model = PulseModel::exact);

// Free evolution exp[i tau (delta Jz + q (J^2 - 3 Jz^2))].
OperatorMatrix free_propagator(const SpinSystem& sys, double tau, double delta, double q_j);

// Exact rotary-echo block of the cancellation sequence (the first four
// segments, instantaneous pi/2 pulses):
//   exp[-i (pi/2) Jx] exp[i (T/3)(delta Jz + q(J^2-3Jz^2) - omega0 Jy)]
//                     exp[i (T/3)(delta Jz + q(J^2-3Jz^2) + omega0 Jy)]
//   exp[+i (pi/2) Jx]
OperatorMatrix u_actual(const SpinSystem& sys, double total_time, double delta, double q_j, double omega0);

// Idealized rotary-echo block exp[i (2T/3) q (J^2 - (3/2)(Jx^2 + Jy^2))].
// Written in the frame reached after the opening pi/2 x-rotation; diagonal in
// the m basis there.
OperatorMatrix u_approx(const SpinSystem& sys, double total_time, double q_j);

// Caches the two drive-segment eigensystems of u_actual so T-scans cost three
// small matrix products per point.
class ContinuousDdPropagator {
public:
    ContinuousDdPropagator(const SpinSystem& sys, double delta, double q_j, double omega0);

    OperatorMatrix unitary(double total_time) const;
    cplx diagonal_element(double total_time, int m_index) const;

private:
    int dim_;
    std::vector<double> eig_minus_, eig_plus_;   // drive generators with -/+ omega0 Jy
    OperatorMatrix left_, middle_, right_;       // R^dag V-, V-^dag V+, V+^dag R
    double tolerance_;
};

struct ResidualScan {
    double p_delta = 0.0; // delta / omega0
    double p_q = 0.0;     // q_j / omega0
    double m = 0.0;
    double omega0 = 0.0;
    std::vector<double> t_grid;          // seconds, strictly increasing
    std::vector<double> phase_diff;      // arg <m|U_act U_app^dag|m>, unwrapped along the grid
    std::vector<double> population_loss; // 1 - |<m|U_act|m>|^2
};

// Phase and amplitude error of the exact rotary-echo block against the
// idealized one along a grid of interrogation times. The phase is unwrapped
// branch-by-branch; if a step exceeds pi/2 the grid is refined (halved, up to
// three times) and an error is raised if the phase still moves too fast.
ResidualScan residual_phase_scan(const SpinSystem& sys, double m, double omega0, double p_delta,
                                 double p_q, std::vector<double> t_grid);

// Slope of an ordinary least-squares line through (T, phase_diff): the
// residual angular frequency of the idealization error. Requires >= 10 points.
double residual_frequency(const ResidualScan& scan);

// Closed-form envelope for the residual phase at j = 5/2, m = 5/2 when
// p_delta = p_q = p:
//   p^3 (2/5)^3 27 (sin((5/3) omega0 T) + (5/3) omega0 T)
double analytic_bound(double p, double omega0, double total_time);

struct IonShiftCase {
    double delta = 0.0; // rad/s
    double q_j = 0.0;   // rad/s
};

struct ResidualTable {
    std::vector<double> m_values;            // rows
    std::vector<std::vector<double>> f_r_hz; // [m][ion], ordinary Hz, signed
};

// Residual clock shift of the cancellation sequence per ion and initial |m>.
// Entries are quoted as the slope of the idealization phase error per unit
// drive time (the rotary block spans 2T/3) with the clock sign convention,
// i.e. -(3/2) x the raw phase_diff slope against T, in Hz.
ResidualTable three_ion_residual_table(const std::vector<IonShiftCase>& ions, double omega0,
                                       const SpinSystem& sys, const std::vector<double>& m_values,
                                       const std::vector<double>& t_grid);

// Uniform grid helper for scans: n points from 0 to t_max inclusive.
std::vector<double> uniform_grid(double t_max, int n_points);

} // namespace ddclock
