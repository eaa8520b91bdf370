#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddclock {

enum class Manifold { excited_j, ground_s };

enum class SegmentKind { free_evolution, rf_pulse };

// One piecewise-constant interval of a pulse schedule. An ideal segment is an
// instantaneous rotation of area omega*duration that consumes no wall-clock
// time; only non-ideal segments contribute to the sequence span.
struct Segment {
    Manifold manifold = Manifold::excited_j;
    SegmentKind kind = SegmentKind::free_evolution;
    double duration = 0.0; // seconds
    double phi = 0.0;      // rad, meaningful for rf_pulse only
    double omega = 0.0;    // rad/s, 0 for free evolution
    bool ideal = false;

    double area() const { return omega * duration; }
    void validate() const;
};

struct PulseSequence {
    std::vector<Segment> segments; // time order, first segment earliest

    // sum of durations of non-ideal segments
    double total_time() const;
};

enum class PulseMode { ideal, finite };

// Quadrupole-cancellation sequence: a pi/2 x-pulse, a +y drive for T/3, a -y
// drive for T/3, a -x pi/2 pulse, then free evolution for the remaining T/3.
// In finite mode the pi/2 pulses last pi/(2 omega0) each and are deducted from
// the final free segment so the schedule spans exactly T.
PulseSequence quad_cancel_sequence(double total_time, double omega0, PulseMode mode);

// Plain Ramsey dark time: one free segment on the excited manifold.
PulseSequence ramsey_sequence(double total_time);

enum class EchoMode { magnetic_only, magnetic_and_stark };

struct EchoPulse {
    double time = 0.0; // seconds from the start of the interrogation
    Manifold manifold = Manifold::ground_s;
    bool restore = false; // bookkeeping pulse at the end of the sequence
};

// Echo pulse times that null the superposition phase ledger for a clock
// superposition with ground/excited magnetic responses chi_g, chi_e (rad/s per
// gauss) and magnetic quantum numbers m_g, m_e.
//
// magnetic_only        one ground echo inside the free-evolution window plus a
//                      restoring pulse at T.
// magnetic_and_stark   first ground echo at T/3 (nulls the ac-Stark phase and
//                      the driven-window magnetic phase); the second pulse
//                      time follows from the remaining-phase condition. When
//                      the ground-manifold solution leaves the free window the
//                      second pulse moves to the excited manifold.
//
// Throws numerical_error when no pulse time inside the free window nulls the
// phase (unresolvable configuration).
std::vector<EchoPulse> ground_echo_times(double chi_g, double chi_e, double m_g, double m_e,
                                         double total_time, EchoMode mode);

// Sequence files: one segment per record, fields
//   manifold kind duration_s phi_rad omega_rad_s ideal
// in a fixed order, 17 significant digits, lines starting with '#' ignored.
std::string sequence_to_text(const PulseSequence& seq);
PulseSequence sequence_from_text(const std::string& text);
void write_sequence_file(const PulseSequence& seq, const std::string& path);
PulseSequence read_sequence_file(const std::string& path);

} // namespace ddclock
