#include "bendaid/haptic/session.hpp"

#include <cmath>

namespace bendaid::haptic {

EngineSession set_mode(const EngineSession& /*session*/, const HapticModeConfig& config,
                       double current_absolute_angle) noexcept {
    return EngineSession{config, current_absolute_angle, false};
}

EngineSession reset_zero(const EngineSession& session, double current_absolute_angle) noexcept {
    return set_mode(session, session.active_config, current_absolute_angle);
}

RenderResult render(EngineSession& session, double absolute_angle_deg, double velocity_dps,
                    double time_s) noexcept {
    const KnobState reported{absolute_angle_deg - session.zero_offset_deg, velocity_dps, time_s};
    if (!session.interacted_since_reset) {
        const double eps = session.active_config.rest_velocity_eps_dps;
        if (std::abs(reported.angle_deg) > eps || std::abs(reported.velocity_dps) > eps) {
            session.interacted_since_reset = true;
        }
    }
    if (!session.interacted_since_reset) {
        return {reported, TorqueCommand{0.0}};
    }
    return {reported, compute_torque(session.active_config, reported)};
}

}  // namespace bendaid::haptic
