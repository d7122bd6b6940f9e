#include "bendaid/haptic/torque.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bendaid::haptic {

double clamp_torque(double torque) noexcept {
    if (std::isnan(torque)) return 0.0;
    return std::clamp(torque, -1.0, 1.0);
}

double torque_smooth(const KnobState& /*state*/) noexcept { return 0.0; }

double detent_progress(double angle_deg, double spacing_deg, double direction) noexcept {
    const double x = direction * angle_deg / spacing_deg;
    double f = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    if (f >= 1.0) {
        f = 0.0;
    }
    return f;
}

double torque_detent(const HapticModeConfig& config, const KnobState& state) noexcept {
    const double speed = std::abs(state.velocity_dps);
    if (speed < config.rest_velocity_eps_dps || speed == 0.0) {
        return 0.0;
    }
    const double s = state.velocity_dps > 0.0 ? 1.0 : -1.0;
    const double f = detent_progress(state.angle_deg, config.detent_spacing_deg, s);

    const double click = config.detent_click_fraction;
    if (f < click) {
        return s * config.detent_click_gain;
    }
    const double fp = (f - click) / (1.0 - click);
    const double k = config.detent_steepness;
    return -s * std::expm1(k * fp) / std::expm1(k);
}

double torque_spring(const HapticModeConfig& config, const KnobState& state) noexcept {
    return -config.spring_constant * state.angle_deg;
}

double torque_free(const HapticModeConfig& config) noexcept { return config.free_torque; }

double torque_vibrato(const HapticModeConfig& config, const KnobState& state) noexcept {
    return config.vibrato_amplitude *
           std::sin(2.0 * std::numbers::pi * config.vibrato_freq_hz * state.time_s);
}

TorqueCommand compute_torque(const HapticModeConfig& config, const KnobState& state) noexcept {
    double raw = 0.0;
    switch (config.mode) {
    case Mode::Smooth:
        raw = torque_smooth(state);
        break;
    case Mode::Detent:
        raw = torque_detent(config, state);
        break;
    case Mode::Spring:
        raw = torque_spring(config, state);
        break;
    case Mode::Free:
        raw = torque_free(config);
        break;
    case Mode::Vibrato:
        raw = torque_vibrato(config, state);
        break;
    }
    return {clamp_torque(raw)};
}

}  // namespace bendaid::haptic
