#pragma once

#include <vector>

namespace ddclock {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares line through (x, y). Throws numerical_error for
// degenerate abscissae (fewer than 2 distinct values).
LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace ddclock
