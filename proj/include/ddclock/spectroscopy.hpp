#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ddclock/shift_models.hpp"

namespace ddclock {

// Two-ion parity P(DD) + P(SS) - P(SD) - P(DS). Probabilities must be
// non-negative and sum to 1 within 1e-9.
double parity(double p_dd, double p_ss, double p_sd, double p_ds);

// Parity fringe frequency of an ion pair and its quadrupole/magnetic parts.
struct PairFringe {
    int i = 0, j = 0;      // 1-based ion indices, i < j
    double omega_q = 0.0;  // rad/s
    double omega_m = 0.0;  // rad/s
    double omega = 0.0;    // |omega_q + omega_m|
};

// All pair fringes (i < j) of a chain: omega_q from the quadrupole profile
// differences, omega_m from the Zeeman profile differences.
std::vector<PairFringe> pair_frequencies(const ChainModel& chain);

// Quadrupole part relative to the reference ion, recovered from fringe
// magnitudes alone via the mirror-pair combination
// (1/2) | |omega_{i,ref}| - |omega_{N+1-i,ref}| |. Valid when the magnetic
// part dominates the quadrupole part.
std::vector<double> quadrupole_differences(const std::vector<PairFringe>& fringes, int n_ions,
                                           int reference_ion);

// Magnetic part per pair from (1/2)(|omega_{i,j}| + |omega_{N+1-i,N+1-j}|).
double magnetic_component(const std::vector<PairFringe>& fringes, int n_ions, int i, int j);

// Least-squares slope (rad/s per meter) of the mirror-recovered magnetic
// component against ion separation. Requires >= 2 distinct separations.
double gradient_extract(const ChainModel& chain, const std::vector<PairFringe>& fringes);

struct FringeFit {
    double amplitude = 0.0; // a
    double decay = 0.0;     // b, seconds
    double frequency = 0.0; // c, Hz
    double se_amplitude = 0.0;
    double se_decay = 0.0;
    double se_frequency = 0.0;
    double objective = 0.0; // weighted sum of squared residuals
    int iterations = 0;
};

struct FringeDataset {
    std::vector<double> times;  // seconds
    std::vector<double> parity; // in [-1, 1]
    std::vector<int> shots;
    std::optional<FringeFit> fit;
};

// fringe model a exp(-t/b) cos(2 pi c t); c in Hz
double fringe_model(double a, double b, double c_hz, double t);

// Parity expectation of a two-ion superposition with single-ion coherences
// c1, c2 and relative phase dphi, under a fully dephased common oscillator:
// (c1 c2 / 2) cos(dphi).
double correlation_parity_expectation(double c1, double c2, double dphi);

// Samples a correlation-spectroscopy parity fringe. Each shot draws one
// common oscillator phase, then both ion outcomes; the parity value is the
// per-point shot average. contrast is the parity amplitude a (<= 1/2 in
// correlation mode since each ion coherence is sqrt(2a) <= 1).
FringeDataset simulate_fringe(double omega, double contrast, double decay,
                              const std::vector<double>& times, int shots, std::uint64_t seed,
                              bool correlation_mode = true);

// Weighted Levenberg-Marquardt fit of a exp(-t/b) cos(2 pi c t) with the
// frequency seeded from a periodogram peak. Per-point variance is taken as
// 1/shots. Standard errors come from the curvature of the objective at the
// optimum. Requires >= 8 points spanning >= 1.5 oscillation periods.
FringeFit fit_fringe(const FringeDataset& data);

// Frequency (Hz) of the weighted periodogram peak over (0, 0.5/min_dt].
double periodogram_peak(const std::vector<double>& times, const std::vector<double>& values,
                        const std::vector<double>& weights);

enum class FringeMode { ramsey, quad_cancel };

// Pair fringe frequency from the shift differences of two ions:
// ramsey keeps |dq + dz|; quad_cancel removes the quadrupole part and keeps a
// third of the Zeeman part (only the final free third accumulates detuning
// phase).
double dd_fringe_frequency(double delta_quadrupole, double delta_zeeman, FringeMode mode);

} // namespace ddclock
