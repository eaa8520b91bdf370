#include "ddclock/config.hpp"

#include <cmath>
#include <fstream>

#include "ddclock/errors.hpp"

namespace ddclock {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

bool RunConfig::has(const std::string& pointer) const {
    return data.contains(nlohmann::json::json_pointer(pointer));
}

const nlohmann::json& RunConfig::at_pointer(const std::string& pointer) const {
    const nlohmann::json::json_pointer jp(pointer);
    if (!data.contains(jp)) throw config_error("config: missing field " + pointer);
    return data.at(jp);
}

double RunConfig::number(const std::string& pointer) const {
    const nlohmann::json& v = at_pointer(pointer);
    if (!v.is_number()) throw config_error("config: field " + pointer + " must be a number");
    return v.get<double>();
}

double RunConfig::number_or(const std::string& pointer, double fallback) const {
    return has(pointer) ? number(pointer) : fallback;
}

int RunConfig::integer(const std::string& pointer) const {
    const nlohmann::json& v = at_pointer(pointer);
    if (!v.is_number_integer()) throw config_error("config: field " + pointer + " must be an integer");
    return v.get<int>();
}

int RunConfig::integer_or(const std::string& pointer, int fallback) const {
    return has(pointer) ? integer(pointer) : fallback;
}

std::string RunConfig::text_or(const std::string& pointer, const std::string& fallback) const {
    if (!has(pointer)) return fallback;
    const nlohmann::json& v = at_pointer(pointer);
    if (!v.is_string()) throw config_error("config: field " + pointer + " must be a string");
    return v.get<std::string>();
}

double RunConfig::angular(const std::string& pointer) const { return kTwoPi * number(pointer); }

double RunConfig::angular_or(const std::string& pointer, double fallback_hz) const {
    return kTwoPi * number_or(pointer, fallback_hz);
}

nlohmann::json preset_config(const std::string& name) {
    using nlohmann::json;
    if (name == "paper-residual-tables") {
        // three-ion cancellation-residual tables: evaluated chain parameters
        // and a typical uniform-detuning set, both at omega0 = 50 kHz
        return json{
            {"spin_j", 2.5},
            {"scan",
             {{"omega0_hz", 50e3},
              {"t_max_s", 2.0},
              {"t_points", 401},
              {"m_values", {2.5, 1.5, 0.5}},
              {"p_values", {1e-4, 2.15e-4, 4.64e-4, 1e-3, 2.15e-3, 4.64e-3, 1e-2}},
              {"tables",
               {{{"name", "experiment"},
                 {"ions", {{{"delta_hz", -33.0}, {"q_hz", 28.0}}, {{"delta_hz", 10.0}, {"q_hz", 42.0}}, {{"delta_hz", 53.0}, {"q_hz", 28.0}}}}},
                {{"name", "typical"},
                 {"ions", {{{"delta_hz", 5.0}, {"q_hz", 28.0}}, {{"delta_hz", 5.0}, {"q_hz", 42.0}}, {{"delta_hz", 5.0}, {"q_hz", 28.0}}}}}}}}}};
    }
    if (name == "sr88-echo") {
        return json{{"echo",
                     {{"chi_g_mhz_per_gauss", 2.802},
                      {"chi_e_mhz_per_gauss", 1.68},
                      {"m_g", -0.5},
                      {"m_e", -1.5},
                      {"total_time_s", 1.0},
                      {"b_field_gauss", 1.0},
                      {"omega_g_hz", 1000.0}}}};
    }
    if (name == "paper-3ion") {
        // two adjacent-pair correlations with the cancellation sequence on;
        // fringe frequencies as measured for the (-1/2, -3/2) superposition
        return json{
            {"spin_j", 2.5},
            {"sequence", {{"total_time_s", 0.3}, {"omega0_hz", 50e3}}},
            {"fringe",
             {{"contrast", 0.5},
              {"decay_s", 2.0},
              {"shots", 250},
              {"times_s", {{"start", 0.005}, {"stop", 0.35}, {"points", 60}}},
              {"pairs",
               {{{"i", 1}, {"j", 2}, {"frequency_hz", 22.146}},
                {{"i", 2}, {"j", 3}, {"frequency_hz", 22.168}}}}}}};
    }
    if (name == "paper-7ion") {
        // seven-ion chain with a linear field gradient; all 21 correlations
        return json{
            {"spin_j", 2.5},
            {"chain",
             {{"n_ions", 7},
              {"axial_freq_hz", 1.5e6},
              {"mass_amu", 87.9056125},
              {"b_gradient_hz_per_um", 16.4},
              {"quad_coupling_hz_per_v_m2", 5e-9},
              {"trap_gradient_v_m2", 0.0}}},
            {"fringe",
             {{"contrast", 0.5},
              {"decay_s", 2.0},
              {"shots", 250},
              {"times_s", {{"start", 0.002}, {"stop", 0.12}, {"points", 60}}},
              {"from_chain", "ramsey"}}}};
    }
    throw config_error("config: unknown preset '" + name + "'");
}

RunConfig load_config(const std::string& path, const std::optional<std::string>& out_override,
                      const std::optional<std::uint64_t>& seed_override) {
    std::ifstream is(path);
    if (!is) throw config_error("config: cannot open " + path);
    nlohmann::json user;
    try {
        is >> user;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config: parse error: ") + e.what());
    }

    nlohmann::json merged = nlohmann::json::object();
    if (user.contains("preset")) {
        if (!user["preset"].is_string()) throw config_error("config: field /preset must be a string");
        merged = preset_config(user["preset"].get<std::string>());
    }
    merged.merge_patch(user);

    RunConfig cfg;
    cfg.data = std::move(merged);
    cfg.out_dir = cfg.text_or("/out_dir", "out");
    if (cfg.has("/seed")) {
        const nlohmann::json& s = cfg.at_pointer("/seed");
        if (!s.is_number_unsigned() && !s.is_number_integer()) throw config_error("config: field /seed must be an integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (out_override) cfg.out_dir = *out_override;
    if (seed_override) cfg.seed = *seed_override;
    return cfg;
}

} // namespace ddclock
