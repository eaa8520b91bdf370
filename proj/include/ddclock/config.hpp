#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace ddclock {

// One run = one structured config file. A "preset" field pulls in embedded
// parameter blocks; explicit fields in the file override the preset via a
// recursive merge. Frequencies in config files are ordinary Hz (suffixed
// _hz, _mhz_per_gauss, ...) and are converted to angular units by the typed
// accessors, never stored converted.
struct RunConfig {
    nlohmann::json data;
    std::string out_dir = "out";
    std::uint64_t seed = 1;

    bool has(const std::string& pointer) const;
    const nlohmann::json& at_pointer(const std::string& pointer) const; // throws config_error naming the field

    double number(const std::string& pointer) const;
    double number_or(const std::string& pointer, double fallback) const;
    int integer(const std::string& pointer) const;
    int integer_or(const std::string& pointer, int fallback) const;
    std::string text_or(const std::string& pointer, const std::string& fallback) const;

    // ordinary frequency field (Hz) -> rad/s
    double angular(const std::string& pointer) const;
    double angular_or(const std::string& pointer, double fallback_hz) const;
};

nlohmann::json preset_config(const std::string& name);

RunConfig load_config(const std::string& path, const std::optional<std::string>& out_override,
                      const std::optional<std::uint64_t>& seed_override);

} // namespace ddclock
