#include "ddclock/shift_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddclock/errors.hpp"

namespace ddclock {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ManifoldResponse sr88_response() {
    // 2.802 MHz/G (ground) and 1.68 MHz/G (excited), stored as angular
    // frequencies per gauss
    return ManifoldResponse{2.0 * kPi * 2.802e6, 2.0 * kPi * 1.68e6, -0.5, -1.5};
}

double phase_ledger(const ManifoldResponse& resp, double b_field, double omega_g, double total_time,
                    const std::vector<EchoPulse>& echoes) {
    if (!(total_time > 0.0)) throw std::invalid_argument("phase_ledger: T must be > 0");
    const double T = total_time;
    for (const EchoPulse& e : echoes)
        if (e.time < 0.0 || e.time > T + 1e-12 * T)
            throw std::invalid_argument("phase_ledger: echo times must lie within (0, T]");

    double stark_rate = 0.0;
    if (omega_g != 0.0) {
        const double stark_delta = (resp.chi_e - resp.chi_g) * b_field;
        if (stark_delta == 0.0)
            throw std::invalid_argument(
                "phase_ledger: degenerate manifold responses, Stark term divides by zero");
        const double sign_mg = (resp.m_g >= 0.0) ? 1.0 : -1.0;
        stark_rate = sign_mg * omega_g * omega_g / (2.0 * stark_delta);
    }

    std::vector<EchoPulse> sorted = echoes;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const EchoPulse& a, const EchoPulse& b) { return a.time < b.time; });

    const double drive_end = 2.0 * T / 3.0;
    double ground_sign = 1.0;
    double excited_sign = 1.0;
    double phase = 0.0;
    double t = 0.0;
    std::size_t next = 0;
    while (t < T) {
        double t_stop = T;
        if (next < sorted.size()) t_stop = std::min(t_stop, sorted[next].time);
        // split at the end of the driven window so each piece has constant rates
        double t_end = t_stop;
        if (t < drive_end && t_stop > drive_end) t_end = drive_end;

        const double dt = t_end - t;
        if (dt > 0.0) {
            const bool driven = t < drive_end;
            double rate = ground_sign * resp.chi_g * resp.m_g * b_field;
            if (!driven) rate -= excited_sign * resp.chi_e * resp.m_e * b_field;
            if (driven) rate += ground_sign * stark_rate;
            phase += rate * dt;
            t = t_end;
        }
        if (next < sorted.size() && t >= sorted[next].time) {
            if (sorted[next].manifold == Manifold::ground_s)
                ground_sign = -ground_sign;
            else
                excited_sign = -excited_sign;
            ++next;
        }
    }
    return phase;
}

double ac_stark_estimate(double omega_s, double delta_s) {
    if (delta_s == 0.0) throw std::invalid_argument("ac_stark_estimate: detuning must be nonzero");
    return omega_s * omega_s / delta_s;
}

namespace {

// scaled force balance: f_i = u_i - sum_{j != i} sign(u_i - u_j) / (u_i - u_j)^2
void chain_forces(const std::vector<double>& u, std::vector<double>& f) {
    const int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i) {
        double fi = u[i];
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = u[i] - u[j];
            fi -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
        }
        f[i] = fi;
    }
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// solves J dx = f in place (dense Gaussian elimination with partial pivoting)
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        if (std::abs(a[col][col]) < 1e-300) throw numerical_error("chain_equilibrium: singular Newton system");
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

} // namespace

std::vector<double> chain_equilibrium_scaled(int n_ions) {
    if (n_ions < 1) throw std::invalid_argument("chain_equilibrium: need at least one ion");
    if (n_ions == 1) return {0.0};

    const int n = n_ions;
    // uniform-spacing heuristic start
    std::vector<double> u(n);
    const double spacing = 2.018 / std::pow(n, 0.559);
    for (int i = 0; i < n; ++i) u[i] = spacing * (i - 0.5 * (n - 1));

    std::vector<double> f(n), trial(n), f_trial(n);
    chain_forces(u, f);
    double residual = max_abs(f);
    int stagnant = 0;
    for (int iter = 0; iter < 200 && residual > 1e-13; ++iter) {
        // Jacobian of the force balance
        std::vector<std::vector<double>> jac(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            double diag = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double d = std::abs(u[i] - u[j]);
                const double w = 2.0 / (d * d * d);
                diag += w;
                jac[i][j] = -w;
            }
            jac[i][i] = diag;
        }
        const std::vector<double> step = solve_dense(jac, f);

        // damped update
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k) {
            for (int i = 0; i < n; ++i) trial[i] = u[i] - lambda * step[i];
            // reject collapses that reorder the chain
            bool ordered = true;
            for (int i = 1; i < n; ++i)
                if (!(trial[i] > trial[i - 1])) ordered = false;
            if (ordered) {
                chain_forces(trial, f_trial);
                if (max_abs(f_trial) < residual) {
                    u = trial;
                    f = f_trial;
                    residual = max_abs(f);
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            // steepest-descent fallback on stagnation
            if (++stagnant > 5)
                throw numerical_error("chain_equilibrium: minimizer failed to converge");
            const double eta = 1e-3 / (1.0 + residual);
            for (int i = 0; i < n; ++i) u[i] -= eta * f[i];
            std::sort(u.begin(), u.end());
            chain_forces(u, f);
            residual = max_abs(f);
        }
    }
    if (residual > 1e-10) throw numerical_error("chain_equilibrium: residual force above tolerance");

    // symmetrize against roundoff drift; the equilibrium is reflection-symmetric
    for (int i = 0; i < n / 2; ++i) {
        const double s = 0.5 * (u[i] - u[n - 1 - i]);
        u[i] = s;
        u[n - 1 - i] = -s;
    }
    if (n % 2 == 1) u[n / 2] = 0.0;
    return u;
}

std::vector<double> chain_equilibrium(int n_ions, double omega_axial, double mass, double charge) {
    if (!(omega_axial > 0.0) || !(mass > 0.0) || !(charge != 0.0))
        throw std::invalid_argument("chain_equilibrium: omega_axial, mass must be positive and charge nonzero");
    const double scale = std::cbrt(constants::coulomb_constant * charge * charge / (mass * omega_axial * omega_axial));
    std::vector<double> u = chain_equilibrium_scaled(n_ions);
    for (double& x : u) x *= scale;
    return u;
}

std::vector<double> quadrupole_profile(const std::vector<double>& positions_m, double trap_gradient,
                                       double coupling, double ion_charge) {
    const int n = static_cast<int>(positions_m.size());
    std::vector<double> q(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double grad = trap_gradient;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::abs(positions_m[i] - positions_m[j]);
            if (d <= 0.0) throw std::invalid_argument("quadrupole_profile: coincident ions");
            grad += 2.0 * constants::coulomb_constant * ion_charge / (d * d * d);
        }
        q[i] = coupling * grad;
    }
    return q;
}

std::vector<double> zeeman_profile_linear(const std::vector<double>& positions_m, double slope_rad_per_m) {
    const int n = static_cast<int>(positions_m.size());
    double center = 0.0;
    for (double z : positions_m) center += z;
    center /= std::max(n, 1);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = slope_rad_per_m * (positions_m[i] - center);
    return out;
}

void ChainModel::validate(double rel_tol) const {
    const int n = n_ions;
    if (static_cast<int>(positions.size()) != n || static_cast<int>(q_profile.size()) != n ||
        static_cast<int>(zeeman_profile.size()) != n)
        throw std::invalid_argument("ChainModel: profile lengths must equal n_ions");
    for (int i = 1; i < n; ++i)
        if (!(positions[i] > positions[i - 1]))
            throw std::invalid_argument("ChainModel: positions must be strictly ascending");

    double span = 0.0, qmax = 0.0, zmax = 0.0;
    for (int i = 0; i < n; ++i) {
        span = std::max(span, std::abs(positions[i]));
        qmax = std::max(qmax, std::abs(q_profile[i]));
        zmax = std::max(zmax, std::abs(zeeman_profile[i]));
    }
    double center = 0.0;
    for (double z : positions) center += z;
    center /= std::max(n, 1);
    for (int i = 0; i < n; ++i) {
        const int k = n - 1 - i;
        if (std::abs((positions[i] - center) + (positions[k] - center)) > rel_tol * std::max(span, 1e-300))
            throw std::invalid_argument("ChainModel: positions are not reflection-symmetric about their mean");
        if (std::abs(q_profile[i] - q_profile[k]) > rel_tol * std::max(qmax, 1e-300))
            throw std::invalid_argument("ChainModel: q_profile is not symmetric under ion reversal");
        if (std::abs(zeeman_profile[i] + zeeman_profile[k]) > rel_tol * std::max(zmax, 1e-300))
            throw std::invalid_argument("ChainModel: zeeman_profile is not antisymmetric about the chain center");
    }
}

} // namespace ddclock
