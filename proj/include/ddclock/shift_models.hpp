#pragma once

#include <vector>

#include "ddclock/sequences.hpp"

namespace ddclock {

namespace constants {
// CODATA values; configuration files may override the ion mass and charge.
inline constexpr double epsilon0 = 8.8541878128e-12;        // F/m
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double coulomb_constant = 1.0 / (4.0 * 3.14159265358979323846 * epsilon0);
inline constexpr double sr88_mass = 87.9056125 * atomic_mass_unit; // kg
} // namespace constants

// Magnetic responses (rad/s per gauss) and magnetic quantum numbers of the
// two clock levels.
struct ManifoldResponse {
    double chi_g = 0.0;
    double chi_e = 0.0;
    double m_g = 0.0;
    double m_e = 0.0;
};

// Sr+ 5S1/2 <-> 4D5/2 responses for the m_g=-1/2, m_e=-3/2 superposition.
ManifoldResponse sr88_response();

// Superposition phase (ground minus excited, laser terms excluded) accumulated
// over one interrogation of length T under a static field B (gauss), with
// ground-manifold RF Rabi frequency omega_g driving the ac-Stark term.
//
// Bookkeeping: the ground magnetic term chi_g m_g B accrues over all of [0,T]
// and flips sign at every ground echo; the excited term chi_e m_e B accrues
// only during the free window [2T/3, T] (the drive decouples it earlier) and
// flips at excited echoes; the ac-Stark term omega_g^2/(2 delta) with
// delta = (chi_e - chi_g) B accrues only during the driven window [0, 2T/3],
// carries the sign of m_g and flips with the ground echoes.
//
// Throws std::invalid_argument when omega_g > 0 and the Stark denominator
// (chi_e - chi_g) B vanishes.
double phase_ledger(const ManifoldResponse& resp, double b_field, double omega_g, double total_time,
                    const std::vector<EchoPulse>& echoes);

// Level shift of an off-resonantly driven two-level pair, omega_s^2 / delta_s.
double ac_stark_estimate(double omega_s, double delta_s);

// Equilibrium positions (scaled by the Coulomb length) of n ions in a harmonic
// axial well, ascending. Damped Newton on the force balance with a
// steepest-descent fallback.
std::vector<double> chain_equilibrium_scaled(int n_ions);

// Equilibrium positions in meters; the length scale is
// (charge^2 / (4 pi eps0 mass omega_axial^2))^(1/3).
std::vector<double> chain_equilibrium(int n_ions, double omega_axial, double mass, double charge);

// Per-ion quadrupole coupling (rad/s): coupling x (trap gradient + crystal
// field gradient), the latter being sum_j 2 k_e q / |z_i - z_j|^3.
std::vector<double> quadrupole_profile(const std::vector<double>& positions_m, double trap_gradient,
                                       double coupling, double ion_charge = constants::elementary_charge);

// Per-ion linear Zeeman shift (rad/s) for a uniform field gradient:
// slope_rad_per_m x (z_i - z_center).
std::vector<double> zeeman_profile_linear(const std::vector<double>& positions_m, double slope_rad_per_m);

// Shift landscape of a linear chain.
struct ChainModel {
    int n_ions = 0;
    std::vector<double> positions;      // meters, ascending
    std::vector<double> q_profile;      // rad/s per ion
    double b_gradient = 0.0;            // gauss per meter (bookkeeping only)
    std::vector<double> zeeman_profile; // rad/s per ion

    // checks the chain symmetry invariants (reflection-symmetric positions and
    // q profile, antisymmetric Zeeman profile) to relative tolerance
    void validate(double rel_tol = 1e-9) const;
};

} // namespace ddclock
