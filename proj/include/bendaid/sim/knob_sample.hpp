#pragma once

#include <cstdint>

#include "bendaid/haptic/mode.hpp"

namespace bendaid::sim {

/// One telemetry tick as printed by the device.
struct KnobSample {
    std::uint64_t seq = 0;
    std::uint64_t t_ms = 0;
    double angle_deg = 0.0;
    double velocity_dps = 0.0;
    double torque = 0.0;
    haptic::Mode mode = haptic::Mode::Smooth;

    friend bool operator==(const KnobSample&, const KnobSample&) = default;
};

}  // namespace bendaid::sim
