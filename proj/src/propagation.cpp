#include "ddclock/propagation.hpp"

#include <cmath>
#include <stdexcept>

#include "ddclock/errors.hpp"
#include "ddclock/fitting.hpp"

namespace ddclock {

namespace {

constexpr double kPi = 3.14159265358979323846;

OperatorMatrix drive_axis_operator(const SpinSystem& sys, double phi) {
    const int n = sys.dim;
    OperatorMatrix jd(n);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) jd(r, col) = c * sys.jx(r, col) + s * sys.jy(r, col);
    return jd;
}

OperatorMatrix segment_unitary(const SpinSystem& sys, const Segment& seg, const DriveParams& env,
                               PulseModel model) {
    seg.validate();
    if (seg.ideal) {
        // instantaneous rotation, free terms omitted
        return expm_i_hermitian(drive_axis_operator(sys, seg.phi), seg.area());
    }
    if (seg.kind == SegmentKind::free_evolution)
        return free_propagator(sys, seg.duration, env.delta, env.q_j);

    if (model == PulseModel::exact) {
        DriveParams p = env;
        p.omega = seg.omega;
        p.phi = seg.phi;
        return expm_i_hermitian(interaction_hamiltonian(sys, p), seg.duration);
    }

    // averaged drive: keep the quadrupole part commuting with the drive axis
    const OperatorMatrix jd = drive_axis_operator(sys, seg.phi);
    const OperatorMatrix jd2 = jd * jd;
    const int n = sys.dim;
    OperatorMatrix gen(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            gen(r, c) = env.q_j * (1.5 * jd2(r, c) - 0.5 * sys.jsq(r, c)) + seg.omega * jd(r, c);
    return expm_i_hermitian(gen, seg.duration);
}

} // namespace

OperatorMatrix free_propagator(const SpinSystem& sys, double tau, double delta, double q_j) {
    // diagonal in the m basis: phase tau (delta m + q (j(j+1) - 3 m^2))
    const int n = sys.dim;
    OperatorMatrix u(n, 1e-10);
    const double jj = sys.j * (sys.j + 1.0);
    for (int k = 0; k < n; ++k) {
        const double m = sys.m_values[k];
        u(k, k) = std::polar(1.0, tau * (delta * m + q_j * (jj - 3.0 * m * m)));
    }
    return u;
}

PropagationResult propagate(const SpinSystem& sys, const PulseSequence& seq,
                            const std::vector<DriveParams>& env, PulseModel model) {
    if (env.size() != seq.segments.size())
        throw std::invalid_argument("propagate: need one DriveParams per segment");
    if (!seq.segments.empty()) {
        const Manifold mf = seq.segments.front().manifold;
        for (const Segment& s : seq.segments)
            if (s.manifold != mf)
                throw std::invalid_argument("propagate: all segments must act on the same manifold");
    }

    OperatorMatrix u = OperatorMatrix::identity(sys.dim, 1e-10);
    for (std::size_t k = 0; k < seq.segments.size(); ++k) {
        // later segments multiply from the left
        u = segment_unitary(sys, seq.segments[k], env[k], model) * u;
    }

    PropagationResult out{u, {}, {}};
    out.per_m_amplitude.resize(sys.dim);
    out.per_m_phase.resize(sys.dim);
    for (int k = 0; k < sys.dim; ++k) {
        out.per_m_amplitude[k] = u(k, k);
        out.per_m_phase[k] = std::arg(u(k, k));
    }
    return out;
}

PropagationResult propagate(const SpinSystem& sys, const PulseSequence& seq,
                            const DriveParams& env, PulseModel model) {
    return propagate(sys, seq, std::vector<DriveParams>(seq.segments.size(), env), model);
}

OperatorMatrix u_actual(const SpinSystem& sys, double total_time, double delta, double q_j, double omega0) {
    if (total_time < 0.0) throw std::invalid_argument("u_actual: T must be >= 0");
    const ContinuousDdPropagator prop(sys, delta, q_j, omega0);
    return prop.unitary(total_time);
}

OperatorMatrix u_approx(const SpinSystem& sys, double total_time, double q_j) {
    if (total_time < 0.0) throw std::invalid_argument("u_approx: T must be >= 0");
    // J^2 - (3/2)(Jx^2 + Jy^2) = (3/2) Jz^2 - J^2/2, diagonal in the m basis
    const int n = sys.dim;
    OperatorMatrix u(n, 1e-10);
    const double jj = sys.j * (sys.j + 1.0);
    for (int k = 0; k < n; ++k) {
        const double m = sys.m_values[k];
        u(k, k) = std::polar(1.0, (2.0 * total_time / 3.0) * q_j * (1.5 * m * m - 0.5 * jj));
    }
    return u;
}

ContinuousDdPropagator::ContinuousDdPropagator(const SpinSystem& sys, double delta, double q_j,
                                               double omega0)
    : dim_(sys.dim), tolerance_(1e-10) {
    const OperatorMatrix jz2 = sys.jz * sys.jz;
    OperatorMatrix free_part(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            free_part(r, c) = delta * sys.jz(r, c) + q_j * (sys.jsq(r, c) - 3.0 * jz2(r, c));

    OperatorMatrix gen_minus = free_part;
    OperatorMatrix gen_plus = free_part;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            gen_minus(r, c) -= omega0 * sys.jy(r, c);
            gen_plus(r, c) += omega0 * sys.jy(r, c);
        }

    const EigenSystem em = hermitian_eigendecompose(gen_minus);
    const EigenSystem ep = hermitian_eigendecompose(gen_plus);
    eig_minus_ = em.eigenvalues;
    eig_plus_ = ep.eigenvalues;

    const OperatorMatrix rot_plus = expm_i_hermitian(sys.jx, 0.5 * kPi);  // rightmost factor
    const OperatorMatrix rot_minus = expm_i_hermitian(sys.jx, -0.5 * kPi);
    left_ = rot_minus * em.eigenvectors;
    middle_ = em.eigenvectors.adjoint() * ep.eigenvectors;
    right_ = ep.eigenvectors.adjoint() * rot_plus;
}

OperatorMatrix ContinuousDdPropagator::unitary(double total_time) const {
    const double third = total_time / 3.0;
    OperatorMatrix a = left_; // apply diag(e^{i w- T/3}) between left_ and middle_
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) a(r, c) *= std::polar(1.0, third * eig_minus_[c]);
    OperatorMatrix b = middle_;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) b(r, c) *= std::polar(1.0, third * eig_plus_[c]);
    OperatorMatrix out = a * (b * right_);
    out.set_tolerance(tolerance_);
    return out;
}

cplx ContinuousDdPropagator::diagonal_element(double total_time, int m_index) const {
    const double third = total_time / 3.0;
    cplx acc{0.0, 0.0};
    for (int k = 0; k < dim_; ++k) {
        const cplx lk = left_(m_index, k) * std::polar(1.0, third * eig_minus_[k]);
        cplx inner{0.0, 0.0};
        for (int l = 0; l < dim_; ++l)
            inner += middle_(k, l) * std::polar(1.0, third * eig_plus_[l]) * right_(l, m_index);
        acc += lk * inner;
    }
    return acc;
}

namespace {

double wrap_to_pi(double x) {
    const double two_pi = 2.0 * kPi;
    double r = std::fmod(x + kPi, two_pi);
    if (r < 0.0) r += two_pi;
    return r - kPi;
}

// diagonal phase of the idealized block for one m
double approx_phase(double total_time, double q_j, double j, double m) {
    return (2.0 * total_time / 3.0) * q_j * (1.5 * m * m - 0.5 * j * (j + 1.0));
}

} // namespace

ResidualScan residual_phase_scan(const SpinSystem& sys, double m, double omega0, double p_delta,
                                 double p_q, std::vector<double> t_grid) {
    if (t_grid.size() < 2) throw std::invalid_argument("residual_phase_scan: need at least 2 grid points");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("residual_phase_scan: T grid must be strictly increasing");

    const int m_index = sys.index_of_m(m);
    const double delta = p_delta * omega0;
    const double q_j = p_q * omega0;
    const ContinuousDdPropagator prop(sys, delta, q_j, omega0);

    // unwrapped phase with refinement: if a branch step exceeds pi/2 the grid
    // is halved (up to three times) to rule out aliasing of the fast terms
    constexpr double step_limit = 0.5 * kPi;
    std::vector<double> grid = std::move(t_grid);
    for (int attempt = 0;; ++attempt) {
        std::vector<double> phase(grid.size());
        std::vector<double> loss(grid.size());
        bool ok = true;
        double prev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const cplx amp = prop.diagonal_element(grid[i], m_index);
            loss[i] = 1.0 - std::norm(amp);
            const double raw = std::arg(amp * std::polar(1.0, -approx_phase(grid[i], q_j, sys.j, m)));
            const double step = wrap_to_pi(raw - prev);
            if (i > 0 && std::abs(step) > step_limit) {
                ok = false;
                break;
            }
            prev = (i == 0) ? raw : prev + step;
            phase[i] = prev;
        }
        if (ok) {
            ResidualScan out;
            out.p_delta = p_delta;
            out.p_q = p_q;
            out.m = m;
            out.omega0 = omega0;
            out.t_grid = std::move(grid);
            out.phase_diff = std::move(phase);
            out.population_loss = std::move(loss);
            return out;
        }
        if (attempt == 3)
            throw numerical_error(
                "residual_phase_scan: phase step exceeds pi/2 after 3 grid refinements; use a finer T grid");
        // halve the step
        std::vector<double> finer;
        finer.reserve(grid.size() * 2 - 1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            finer.push_back(grid[i]);
            if (i + 1 < grid.size()) finer.push_back(0.5 * (grid[i] + grid[i + 1]));
        }
        grid = std::move(finer);
    }
}

double residual_frequency(const ResidualScan& scan) {
    if (scan.t_grid.size() < 10)
        throw std::invalid_argument("residual_frequency: need at least 10 grid points");
    const LineFit fit = ols_line(scan.t_grid, scan.phase_diff);
    return fit.slope;
}

double analytic_bound(double p, double omega0, double total_time) {
    const double x = (5.0 / 3.0) * omega0 * total_time;
    const double c = std::pow(0.4, 3) * 27.0;
    return std::abs(p * p * p) * c * (std::sin(x) + x);
}

ResidualTable three_ion_residual_table(const std::vector<IonShiftCase>& ions, double omega0,
                                       const SpinSystem& sys, const std::vector<double>& m_values,
                                       const std::vector<double>& t_grid) {
    ResidualTable table;
    table.m_values = m_values;
    table.f_r_hz.resize(m_values.size());
    for (std::size_t mi = 0; mi < m_values.size(); ++mi) {
        for (const IonShiftCase& ion : ions) {
            ResidualScan scan = residual_phase_scan(sys, m_values[mi], omega0, ion.delta / omega0,
                                                    ion.q_j / omega0, t_grid);
            // quoted per unit drive time (the rotary block spans 2T/3) with the
            // clock sign convention, hence -(3/2) x the slope against T
            const double slope = residual_frequency(scan);
            table.f_r_hz[mi].push_back(-1.5 * slope / (2.0 * kPi));
        }
    }
    return table;
}

std::vector<double> uniform_grid(double t_max, int n_points) {
    if (n_points < 2 || !(t_max > 0.0)) throw std::invalid_argument("uniform_grid: bad arguments");
    std::vector<double> g(n_points);
    for (int i = 0; i < n_points; ++i) g[i] = t_max * static_cast<double>(i) / (n_points - 1);
    return g;
}

} // namespace ddclock
