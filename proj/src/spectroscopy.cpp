#include "ddclock/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddclock/errors.hpp"
#include "ddclock/fitting.hpp"
#include "ddclock/random.hpp"

namespace ddclock {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double parity(double p_dd, double p_ss, double p_sd, double p_ds) {
    const double vals[] = {p_dd, p_ss, p_sd, p_ds};
    double sum = 0.0;
    for (double v : vals) {
        if (v < 0.0) throw std::invalid_argument("parity: probabilities must be non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("parity: probabilities must sum to 1");
    return p_dd + p_ss - p_sd - p_ds;
}

std::vector<PairFringe> pair_frequencies(const ChainModel& chain) {
    const int n = chain.n_ions;
    if (static_cast<int>(chain.q_profile.size()) != n || static_cast<int>(chain.zeeman_profile.size()) != n)
        throw std::invalid_argument("pair_frequencies: chain profiles not populated");
    std::vector<PairFringe> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            PairFringe f;
            f.i = i;
            f.j = j;
            f.omega_q = chain.q_profile[i - 1] - chain.q_profile[j - 1];
            f.omega_m = chain.zeeman_profile[i - 1] - chain.zeeman_profile[j - 1];
            f.omega = std::abs(f.omega_q + f.omega_m);
            out.push_back(f);
        }
    return out;
}

namespace {

double fringe_omega(const std::vector<PairFringe>& fringes, int i, int j) {
    if (i == j) return 0.0;
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    for (const PairFringe& f : fringes)
        if (f.i == a && f.j == b) return f.omega;
    throw std::invalid_argument("pair fringe (" + std::to_string(a) + "," + std::to_string(b) + ") not present");
}

} // namespace

std::vector<double> quadrupole_differences(const std::vector<PairFringe>& fringes, int n_ions,
                                           int reference_ion) {
    std::vector<double> out(n_ions, 0.0);
    for (int i = 1; i <= n_ions; ++i) {
        if (i == reference_ion) continue;
        const double w = fringe_omega(fringes, i, reference_ion);
        const double w_mirror = fringe_omega(fringes, n_ions + 1 - i, reference_ion);
        out[i - 1] = 0.5 * std::abs(w - w_mirror);
    }
    return out;
}

double magnetic_component(const std::vector<PairFringe>& fringes, int n_ions, int i, int j) {
    const double w = fringe_omega(fringes, i, j);
    const double w_mirror = fringe_omega(fringes, n_ions + 1 - i, n_ions + 1 - j);
    return 0.5 * (w + w_mirror);
}

double gradient_extract(const ChainModel& chain, const std::vector<PairFringe>& fringes) {
    const int n = chain.n_ions;
    std::vector<double> separations, magnetic;
    for (const PairFringe& f : fringes) {
        separations.push_back(std::abs(chain.positions[f.j - 1] - chain.positions[f.i - 1]));
        magnetic.push_back(magnetic_component(fringes, n, f.i, f.j));
    }
    double sep_min = 1e300, sep_max = 0.0;
    for (double s : separations) {
        sep_min = std::min(sep_min, s);
        sep_max = std::max(sep_max, s);
    }
    if (separations.size() < 2 || !(sep_max > sep_min * (1.0 + 1e-12)))
        throw numerical_error("gradient_extract: need at least 2 distinct ion separations");
    return ols_line(separations, magnetic).slope;
}

double fringe_model(double a, double b, double c_hz, double t) {
    return a * std::exp(-t / b) * std::cos(2.0 * kPi * c_hz * t);
}

double correlation_parity_expectation(double c1, double c2, double dphi) {
    return 0.5 * c1 * c2 * std::cos(dphi);
}

FringeDataset simulate_fringe(double omega, double contrast, double decay,
                              const std::vector<double>& times, int shots, std::uint64_t seed,
                              bool correlation_mode) {
    if (shots <= 0) throw std::invalid_argument("simulate_fringe: shots must be positive");
    if (contrast < 0.0) throw std::invalid_argument("simulate_fringe: contrast must be non-negative");
    if (correlation_mode && contrast > 0.5)
        throw std::invalid_argument("simulate_fringe: correlation-spectroscopy contrast is capped at 1/2");
    if (!(decay > 0.0)) throw std::invalid_argument("simulate_fringe: decay must be positive");

    Rng rng(seed);
    FringeDataset data;
    data.times = times;
    data.shots.assign(times.size(), shots);
    data.parity.reserve(times.size());

    // each ion carries coherence sqrt(2a) e^{-t/2b}; the parity amplitude is
    // then a e^{-t/b} with the ceiling a = 1/2 at full single-ion contrast
    const double c0 = std::sqrt(2.0 * contrast);
    for (double t : times) {
        const double coh = c0 * std::exp(-t / (2.0 * decay));
        long acc = 0;
        for (int s = 0; s < shots; ++s) {
            const double theta = 2.0 * kPi * rng.uniform(); // dephased common oscillator
            const bool d1 = rng.bernoulli(0.5 * (1.0 + coh * std::cos(theta + omega * t)));
            const bool d2 = rng.bernoulli(0.5 * (1.0 + coh * std::cos(theta)));
            acc += (d1 == d2) ? 1 : -1;
        }
        data.parity.push_back(static_cast<double>(acc) / shots);
    }
    return data;
}

double periodogram_peak(const std::vector<double>& times, const std::vector<double>& values,
                        const std::vector<double>& weights) {
    if (times.size() < 2) throw std::invalid_argument("periodogram_peak: need at least 2 points");
    std::vector<double> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    double dt_min = 1e300;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] - sorted[i - 1] > 0.0) dt_min = std::min(dt_min, sorted[i] - sorted[i - 1]);
    const double span = sorted.back() - sorted.front();
    if (!(span > 0.0) || dt_min == 1e300)
        throw std::invalid_argument("periodogram_peak: degenerate time axis");

    const double f_max = 0.5 / dt_min;
    const double df = 0.1 / span; // 10x oversampled frequency comb
    double best_f = df, best_power = -1.0;
    for (double f = df; f <= f_max; f += df) {
        double cr = 0.0, ci = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double ph = 2.0 * kPi * f * times[k];
            cr += weights[k] * values[k] * std::cos(ph);
            ci += weights[k] * values[k] * std::sin(ph);
        }
        const double power = cr * cr + ci * ci;
        if (power > best_power) {
            best_power = power;
            best_f = f;
        }
    }
    return best_f;
}

namespace {

struct Design {
    std::vector<double> t, y, w, sw; // times, parity, weights (=shots), sqrt weights
    double span = 0.0;
};

double chi_squared(const Design& d, double a, double b, double c) {
    double acc = 0.0;
    for (std::size_t k = 0; k < d.t.size(); ++k) {
        const double r = d.y[k] - fringe_model(a, b, c, d.t[k]);
        acc += d.w[k] * r * r;
    }
    return acc;
}

} // namespace

FringeFit fit_fringe(const FringeDataset& data) {
    const std::size_t n = data.times.size();
    if (n < 8 || data.parity.size() != n || data.shots.size() != n)
        throw std::invalid_argument("fit_fringe: need at least 8 consistent data points");

    Design d;
    d.t = data.times;
    d.y = data.parity;
    d.w.resize(n);
    d.sw.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (data.shots[k] < 1) throw std::invalid_argument("fit_fringe: shots must be >= 1");
        d.w[k] = static_cast<double>(data.shots[k]); // sigma^2 ~ 1/shots
        d.sw[k] = std::sqrt(d.w[k]);
    }
    const auto [tmin_it, tmax_it] = std::minmax_element(d.t.begin(), d.t.end());
    d.span = *tmax_it - *tmin_it;

    const double c0 = periodogram_peak(d.t, d.y, d.w);
    if (d.span * c0 < 1.5)
        throw std::invalid_argument("fit_fringe: data span fewer than 1.5 oscillation periods");

    // amplitude and decay heuristics
    double ms = 0.0;
    for (double v : d.y) ms += v * v;
    double a0 = std::clamp(std::sqrt(2.0 * ms / n), 0.05, 0.6);
    const double t_half = *tmin_it + 0.5 * d.span;
    double e1 = 0.0, e2 = 0.0;
    int n1 = 0, n2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (d.t[k] <= t_half) {
            e1 += std::abs(d.y[k]);
            ++n1;
        } else {
            e2 += std::abs(d.y[k]);
            ++n2;
        }
    }
    e1 /= std::max(n1, 1);
    e2 /= std::max(n2, 1);
    double b0 = 10.0 * d.span;
    if (e1 > e2 && e2 > 0.0) b0 = std::clamp(0.5 * d.span / std::log(e1 / e2), 0.05 * d.span, 100.0 * d.span);

    double a = a0, b = b0, c = c0;
    double lambda = 1e-3;
    double chi2 = chi_squared(d, a, b, c);
    int iterations = 0;
    bool converged = false;

    for (int iter = 0; iter < 200 && !converged; ++iter) {
        iterations = iter + 1;
        // normal equations of the weighted Jacobian
        double jtj[3][3] = {{0}}, jtr[3] = {0};
        for (std::size_t k = 0; k < n; ++k) {
            const double t = d.t[k];
            const double env = std::exp(-t / b);
            const double co = std::cos(2.0 * kPi * c * t);
            const double si = std::sin(2.0 * kPi * c * t);
            const double g[3] = {env * co, a * env * co * t / (b * b), -a * env * si * 2.0 * kPi * t};
            const double r = d.y[k] - a * env * co;
            for (int u = 0; u < 3; ++u) {
                jtr[u] += d.w[k] * g[u] * r;
                for (int v = 0; v < 3; ++v) jtj[u][v] += d.w[k] * g[u] * g[v];
            }
        }

        bool stepped = false;
        for (int tries = 0; tries < 40; ++tries) {
            double m[3][3], rhs[3] = {jtr[0], jtr[1], jtr[2]};
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v) m[u][v] = jtj[u][v] + (u == v ? lambda * jtj[u][u] : 0.0);
            // 3x3 Gaussian elimination
            double dp[3];
            {
                int idx[3] = {0, 1, 2};
                for (int col = 0; col < 3; ++col) {
                    int piv = col;
                    for (int r2 = col + 1; r2 < 3; ++r2)
                        if (std::abs(m[idx[r2]][col]) > std::abs(m[idx[piv]][col])) piv = r2;
                    std::swap(idx[col], idx[piv]);
                    if (std::abs(m[idx[col]][col]) < 1e-300) break;
                    for (int r2 = col + 1; r2 < 3; ++r2) {
                        const double f = m[idx[r2]][col] / m[idx[col]][col];
                        for (int c2 = col; c2 < 3; ++c2) m[idx[r2]][c2] -= f * m[idx[col]][c2];
                        rhs[idx[r2]] -= f * rhs[idx[col]];
                    }
                }
                for (int r2 = 2; r2 >= 0; --r2) {
                    double acc = rhs[idx[r2]];
                    for (int c2 = r2 + 1; c2 < 3; ++c2) acc -= m[idx[r2]][c2] * dp[c2];
                    dp[r2] = (std::abs(m[idx[r2]][r2]) < 1e-300) ? 0.0 : acc / m[idx[r2]][r2];
                }
            }
            double a2 = std::clamp(a + dp[0], 0.0, 0.6);
            double b2 = std::clamp(b + dp[1], 1e-3 * d.span, 1e4 * d.span);
            double c2 = std::max(c + dp[2], 0.0);
            const double chi2_new = chi_squared(d, a2, b2, c2);
            if (chi2_new <= chi2) {
                const double rel = (chi2 - chi2_new) / std::max(chi2, 1e-300);
                const double step2 = dp[0] * dp[0] + dp[1] * dp[1] + dp[2] * dp[2];
                a = a2;
                b = b2;
                c = c2;
                chi2 = chi2_new;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (rel < 1e-14 && step2 < 1e-24 * (1.0 + a * a + b * b + c * c)) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) converged = true; // no descent direction left at this scale
    }
    if (!converged && iterations >= 200)
        throw numerical_error("fit_fringe: Levenberg-Marquardt did not converge");

    // curvature-based standard errors at the optimum
    double jtj[3][3] = {{0}};
    for (std::size_t k = 0; k < n; ++k) {
        const double t = d.t[k];
        const double env = std::exp(-t / b);
        const double co = std::cos(2.0 * kPi * c * t);
        const double si = std::sin(2.0 * kPi * c * t);
        const double g[3] = {env * co, a * env * co * t / (b * b), -a * env * si * 2.0 * kPi * t};
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) jtj[u][v] += d.w[k] * g[u] * g[v];
    }
    // invert 3x3 by adjugate
    const double det = jtj[0][0] * (jtj[1][1] * jtj[2][2] - jtj[1][2] * jtj[2][1]) -
                       jtj[0][1] * (jtj[1][0] * jtj[2][2] - jtj[1][2] * jtj[2][0]) +
                       jtj[0][2] * (jtj[1][0] * jtj[2][1] - jtj[1][1] * jtj[2][0]);
    if (std::abs(det) < 1e-300) throw numerical_error("fit_fringe: singular curvature at the optimum");
    const double inv00 = (jtj[1][1] * jtj[2][2] - jtj[1][2] * jtj[2][1]) / det;
    const double inv11 = (jtj[0][0] * jtj[2][2] - jtj[0][2] * jtj[2][0]) / det;
    const double inv22 = (jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0]) / det;

    FringeFit fit;
    fit.amplitude = a;
    fit.decay = b;
    fit.frequency = c;
    fit.se_amplitude = std::sqrt(std::max(inv00, 0.0));
    fit.se_decay = std::sqrt(std::max(inv11, 0.0));
    fit.se_frequency = std::sqrt(std::max(inv22, 0.0));
    fit.objective = chi2;
    fit.iterations = iterations;
    return fit;
}

double dd_fringe_frequency(double delta_quadrupole, double delta_zeeman, FringeMode mode) {
    if (mode == FringeMode::ramsey) return std::abs(delta_quadrupole + delta_zeeman);
    return std::abs(delta_zeeman) / 3.0;
}

} // namespace ddclock
