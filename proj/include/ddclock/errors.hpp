#pragma once

#include <stdexcept>
#include <string>

namespace ddclock {

// Raised for malformed run configurations (missing fields, bad units, unknown
// presets). The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an iterative scheme fails to converge or a result is numerically
// unusable (singular fit, unwrap failure). The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ddclock
