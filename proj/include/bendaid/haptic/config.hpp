#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bendaid/haptic/mode.hpp"

namespace bendaid::haptic {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mode identifier plus the parameters of every mode. Torques are
/// normalized to the device maximum, angles are degrees.
struct HapticModeConfig {
    Mode mode = Mode::Smooth;

    double detent_spacing_deg = 45.0;
    double detent_steepness = 4.0;
    /// Width of the assistive click just past each detent, as a fraction of
    /// the segment. Zero disables the click.
    double detent_click_fraction = 0.05;
    double detent_click_gain = 0.3;

    double spring_constant = 1.0 / 90.0;  // per degree

    double free_torque = 0.2;

    double vibrato_amplitude = 0.2;
    double vibrato_freq_hz = 5.0;

    /// Detent renders nothing below this speed; also the motion threshold
    /// that ends the torque hold after a zero-point reset.
    double rest_velocity_eps_dps = 1.0;

    /// Throws ConfigError naming the first violated field.
    void validate() const;

    friend bool operator==(const HapticModeConfig&, const HapticModeConfig&) = default;
};

/// Names accepted by PARAM commands, one per numeric field above.
std::span<const std::string_view> param_keys() noexcept;

bool is_param_key(std::string_view key) noexcept;

double get_param(const HapticModeConfig& config, std::string_view key);

/// Returns a copy with one field replaced. Throws ConfigError for an unknown
/// key or if the result violates the config invariants.
HapticModeConfig with_param(HapticModeConfig config, std::string_view key, double value);

}  // namespace bendaid::haptic
