#include "ddclock/sequences.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ddclock/errors.hpp"
#include "ddclock/io.hpp"

namespace ddclock {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Segment::validate() const {
    if (!(duration >= 0.0)) throw std::invalid_argument("Segment: duration must be >= 0");
    if (kind == SegmentKind::free_evolution && omega != 0.0)
        throw std::invalid_argument("Segment: free segments must have omega = 0");
    if (ideal && kind != SegmentKind::rf_pulse)
        throw std::invalid_argument("Segment: only rf pulses can be ideal");
    if (kind == SegmentKind::rf_pulse && !(omega > 0.0))
        throw std::invalid_argument("Segment: rf pulses must have omega > 0");
}

double PulseSequence::total_time() const {
    double t = 0.0;
    for (const Segment& s : segments)
        if (!s.ideal) t += s.duration;
    return t;
}

PulseSequence quad_cancel_sequence(double total_time, double omega0, PulseMode mode) {
    if (!(total_time > 0.0)) throw std::invalid_argument("quad_cancel_sequence: T must be > 0");
    if (!(omega0 > 0.0)) throw std::invalid_argument("quad_cancel_sequence: omega0 must be > 0");

    const double third = total_time / 3.0;
    const double pulse_len = 0.5 * kPi / omega0; // pi/2 area at omega0
    const bool ideal = (mode == PulseMode::ideal);

    double final_free = third;
    if (!ideal) {
        // both pi/2 pulses are counted inside T and deducted from the last third
        final_free = third - 2.0 * pulse_len;
        if (final_free < 0.0)
            throw std::invalid_argument("quad_cancel_sequence: finite pi/2 pulses do not fit inside T/3");
    }

    PulseSequence seq;
    seq.segments = {
        Segment{Manifold::excited_j, SegmentKind::rf_pulse, pulse_len, 0.0, omega0, ideal},       // +x pi/2
        Segment{Manifold::excited_j, SegmentKind::rf_pulse, third, 0.5 * kPi, omega0, false},     // +y drive
        Segment{Manifold::excited_j, SegmentKind::rf_pulse, third, 1.5 * kPi, omega0, false},     // -y drive
        Segment{Manifold::excited_j, SegmentKind::rf_pulse, pulse_len, kPi, omega0, ideal},       // -x pi/2
        Segment{Manifold::excited_j, SegmentKind::free_evolution, final_free, 0.0, 0.0, false},
    };
    for (const Segment& s : seq.segments) s.validate();
    return seq;
}

PulseSequence ramsey_sequence(double total_time) {
    if (!(total_time > 0.0)) throw std::invalid_argument("ramsey_sequence: T must be > 0");
    PulseSequence seq;
    seq.segments = {Segment{Manifold::excited_j, SegmentKind::free_evolution, total_time, 0.0, 0.0, false}};
    return seq;
}

std::vector<EchoPulse> ground_echo_times(double chi_g, double chi_e, double m_g, double m_e,
                                         double total_time, EchoMode mode) {
    if (!(total_time > 0.0)) throw std::invalid_argument("ground_echo_times: T must be > 0");
    if (chi_g * m_g == 0.0) throw std::invalid_argument("ground_echo_times: chi_g * m_g must be nonzero");

    const double T = total_time;
    const double ratio = (chi_e * m_e) / (chi_g * m_g);
    const double lo = 2.0 * T / 3.0; // echo must sit in the free-evolution window
    const double eps = 1e-12 * T;

    std::vector<EchoPulse> out;
    if (mode == EchoMode::magnetic_only) {
        // ground phase chi_g m_g (2 tau - T) balances the free-window excited
        // phase chi_e m_e T/3
        const double tau = (T / 6.0) * (3.0 + ratio);
        if (tau < lo - eps || tau > T + eps)
            throw numerical_error("ground_echo_times: no ground echo inside the free window nulls the phase (unresolvable configuration)");
        out.push_back({tau, Manifold::ground_s, false});
        out.push_back({T, Manifold::ground_s, true}); // restore the initial ground level
        return out;
    }

    // magnetic_and_stark: the first echo at T/3 nulls the ac-Stark phase and
    // the driven-window ground magnetic phase.
    out.push_back({T / 3.0, Manifold::ground_s, false});

    // Second-pulse condition from the sign-tracked ledger. The aggregate form
    // tau2 = (T/6)(ratio + 5) decides the dispatch: beyond T the pulse cannot
    // stay on the ground manifold.
    const double tau2_aggregate = (T / 6.0) * (ratio + 5.0);
    const double tau2_ground = (T / 6.0) * (5.0 - ratio);
    if (tau2_aggregate <= T + eps && tau2_ground >= lo - eps && tau2_ground <= T + eps) {
        out.push_back({tau2_ground, Manifold::ground_s, false});
        return out;
    }

    // excited-manifold second pulse; its time splits the free-window excited
    // phase so the leftover ground phase is cancelled
    if (ratio == 0.0)
        throw numerical_error("ground_echo_times: excited response is zero, no excited echo can null the phase");
    const double tau_e = (T / 6.0) * (5.0 - 1.0 / ratio);
    if (tau_e < lo - eps || tau_e > T + eps)
        throw numerical_error("ground_echo_times: no second pulse inside the free window nulls the phase (unresolvable configuration)");
    out.push_back({tau_e, Manifold::excited_j, false});
    out.push_back({T, Manifold::ground_s, true});  // ground level was flipped once
    out.push_back({T, Manifold::excited_j, true}); // undo the excited flip before detection
    return out;
}

namespace {

const char* manifold_name(Manifold m) { return m == Manifold::excited_j ? "excited_J" : "ground_S"; }
const char* kind_name(SegmentKind k) { return k == SegmentKind::free_evolution ? "free" : "rf_pulse"; }

Manifold parse_manifold(const std::string& s) {
    if (s == "excited_J") return Manifold::excited_j;
    if (s == "ground_S") return Manifold::ground_s;
    throw config_error("sequence file: unknown manifold '" + s + "'");
}

SegmentKind parse_kind(const std::string& s) {
    if (s == "free") return SegmentKind::free_evolution;
    if (s == "rf_pulse") return SegmentKind::rf_pulse;
    throw config_error("sequence file: unknown segment kind '" + s + "'");
}

} // namespace

std::string sequence_to_text(const PulseSequence& seq) {
    std::ostringstream os;
    os << "# ddclock pulse sequence v1\n";
    os << "# manifold kind duration_s phi_rad omega_rad_s ideal\n";
    for (const Segment& s : seq.segments) {
        os << manifold_name(s.manifold) << ' ' << kind_name(s.kind) << ' ' << format_g17(s.duration) << ' '
           << format_g17(s.phi) << ' ' << format_g17(s.omega) << ' ' << (s.ideal ? 1 : 0) << '\n';
    }
    return os.str();
}

PulseSequence sequence_from_text(const std::string& text) {
    PulseSequence seq;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string manifold, kind;
        double duration = 0.0, phi = 0.0, omega = 0.0;
        int ideal = 0;
        if (!(ls >> manifold >> kind >> duration >> phi >> omega >> ideal))
            throw config_error("sequence file: malformed record '" + line + "'");
        Segment s{parse_manifold(manifold), parse_kind(kind), duration, phi, omega, ideal != 0};
        s.validate();
        seq.segments.push_back(s);
    }
    return seq;
}

void write_sequence_file(const PulseSequence& seq, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open sequence file for writing: " + path);
    os << sequence_to_text(seq);
}

PulseSequence read_sequence_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open sequence file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return sequence_from_text(buf.str());
}

} // namespace ddclock
