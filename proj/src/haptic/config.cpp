#include "bendaid/haptic/config.hpp"

#include <array>
#include <cmath>

namespace bendaid::haptic {

namespace {

constexpr std::array<std::string_view, 9> kKeys{
    "detent_spacing_deg", "detent_steepness", "detent_click_fraction",
    "detent_click_gain",  "spring_constant",  "free_torque",
    "vibrato_amplitude",  "vibrato_freq_hz",  "rest_velocity_eps_dps",
};

double* field(HapticModeConfig& c, std::string_view key) {
    if (key == "detent_spacing_deg") return &c.detent_spacing_deg;
    if (key == "detent_steepness") return &c.detent_steepness;
    if (key == "detent_click_fraction") return &c.detent_click_fraction;
    if (key == "detent_click_gain") return &c.detent_click_gain;
    if (key == "spring_constant") return &c.spring_constant;
    if (key == "free_torque") return &c.free_torque;
    if (key == "vibrato_amplitude") return &c.vibrato_amplitude;
    if (key == "vibrato_freq_hz") return &c.vibrato_freq_hz;
    if (key == "rest_velocity_eps_dps") return &c.rest_velocity_eps_dps;
    return nullptr;
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw ConfigError(std::string("invalid haptic config: ") + what);
    }
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void HapticModeConfig::validate() const {
    for (double v : {detent_spacing_deg, detent_steepness, detent_click_fraction, detent_click_gain,
                     spring_constant, free_torque, vibrato_amplitude, vibrato_freq_hz,
                     rest_velocity_eps_dps}) {
        require(std::isfinite(v), "non-finite parameter");
    }
    require(detent_spacing_deg > 0.0, "detent_spacing_deg must be > 0");
    require(detent_steepness > 0.0, "detent_steepness must be > 0");
    require(detent_click_fraction >= 0.0 && detent_click_fraction < 0.5,
            "detent_click_fraction must be in [0, 0.5)");
    require(unit(detent_click_gain), "detent_click_gain must be in [0, 1]");
    require(unit(spring_constant), "spring_constant must be in [0, 1]");
    require(unit(free_torque), "free_torque must be in [0, 1]");
    require(unit(vibrato_amplitude), "vibrato_amplitude must be in [0, 1]");
    require(vibrato_freq_hz >= 0.0, "vibrato_freq_hz must be >= 0");
    require(rest_velocity_eps_dps >= 0.0, "rest_velocity_eps_dps must be >= 0");
}

std::span<const std::string_view> param_keys() noexcept { return kKeys; }

bool is_param_key(std::string_view key) noexcept {
    for (auto k : kKeys) {
        if (k == key) return true;
    }
    return false;
}

double get_param(const HapticModeConfig& config, std::string_view key) {
    auto copy = config;
    double* f = field(copy, key);
    if (f == nullptr) {
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    }
    return *f;
}

HapticModeConfig with_param(HapticModeConfig config, std::string_view key, double value) {
    double* f = field(config, key);
    if (f == nullptr) {
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    }
    *f = value;
    config.validate();
    return config;
}

}  // namespace bendaid::haptic
