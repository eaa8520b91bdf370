#include "ddclock/fitting.hpp"

#include <cmath>
#include <stdexcept>

#include "ddclock/errors.hpp"

namespace ddclock {

LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ols_line: need matching x, y with >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) scale = std::max(scale, std::abs(x[i] - mx));
    if (sxx <= 1e-24 * std::max(1.0, scale * scale) * n)
        throw numerical_error("ols_line: degenerate abscissae, fit is ill-conditioned");
    return LineFit{sxy / sxx, my - (sxy / sxx) * mx};
}

} // namespace ddclock
