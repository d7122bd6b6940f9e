#pragma once

#include "bendaid/haptic/config.hpp"
#include "bendaid/haptic/torque.hpp"

namespace bendaid::haptic {

/// Engine state carried across ticks: the active mode, the absolute angle
/// that defines zero, and whether the knob has moved since that zero was set.
struct EngineSession {
    HapticModeConfig active_config{};
    double zero_offset_deg = 0.0;
    bool interacted_since_reset = false;
};

/// Switches mode and captures the current absolute angle as the new zero
/// point. Torque is held at zero until the knob moves again.
EngineSession set_mode(const EngineSession& session, const HapticModeConfig& config,
                       double current_absolute_angle) noexcept;

/// Re-zeroes without changing mode.
EngineSession reset_zero(const EngineSession& session, double current_absolute_angle) noexcept;

struct RenderResult {
    KnobState reported;
    TorqueCommand command;
};

/// Converts an absolute reading into the session frame and renders torque.
/// Flips interacted_since_reset once |angle| or |velocity| exceeds
/// rest_velocity_eps_dps; until then the command is zero.
RenderResult render(EngineSession& session, double absolute_angle_deg, double velocity_dps,
                    double time_s) noexcept;

}  // namespace bendaid::haptic
