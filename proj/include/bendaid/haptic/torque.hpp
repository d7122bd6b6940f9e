#pragma once

#include "bendaid/haptic/config.hpp"

namespace bendaid::haptic {

/// Knob state as seen by the renderer. The angle is relative to the current
/// zero point and is not wrapped.
struct KnobState {
    double angle_deg = 0.0;
    double velocity_dps = 0.0;
    double time_s = 0.0;
};

/// Normalized torque; +/-1 is the device maximum.
struct TorqueCommand {
    double torque = 0.0;

    friend bool operator==(TorqueCommand, TorqueCommand) = default;
};

/// NaN maps to 0 so a bad input can never reach the motor.
double clamp_torque(double torque) noexcept;

// Per-mode renderers. These return the raw (unclamped) value; callers that
// need the device-safe command go through compute_torque.
double torque_smooth(const KnobState& state) noexcept;
double torque_detent(const HapticModeConfig& config, const KnobState& state) noexcept;
double torque_spring(const HapticModeConfig& config, const KnobState& state) noexcept;
double torque_free(const HapticModeConfig& config) noexcept;
double torque_vibrato(const HapticModeConfig& config, const KnobState& state) noexcept;

/// Fractional progress in [0, 1) from the last detent crossed toward the next
/// one in the direction of travel.
double detent_progress(double angle_deg, double spacing_deg, double direction) noexcept;

/// Dispatches on config.mode and clamps to [-1, 1]. Pure, O(1), allocation free.
TorqueCommand compute_torque(const HapticModeConfig& config, const KnobState& state) noexcept;

}  // namespace bendaid::haptic
