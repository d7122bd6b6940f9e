#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bendaid/sim/rotor.hpp"

namespace bendaid::sim {

struct ConstantTorque {
    double value = 0.0;
};

/// Linear from `from` at segment start to `to` at segment end.
struct RampTorque {
    double from = 0.0;
    double to = 0.0;
};

/// offset + amplitude * sin(2*pi*freq_hz*t + phase_rad), t local to the segment.
struct SineTorque {
    double amplitude = 0.0;
    double freq_hz = 0.0;
    double phase_rad = 0.0;
    double offset = 0.0;
};

using TorqueShape = std::variant<ConstantTorque, RampTorque, SineTorque>;

struct GestureSegment {
    double duration_s = 0.0;
    TorqueShape shape;
};

/// Scripted user torque. Jitter adds uniform noise in [-jitter, +jitter] per
/// tick from a generator seeded with `seed`.
struct GestureProfile {
    std::vector<GestureSegment> segments;
    std::uint64_t seed = 0;
    double jitter = 0.0;

    void validate() const;
    double duration_s() const noexcept;
    /// Noise-free user torque at profile time t; zero past the end.
    double torque_at(double t_s) const noexcept;
};

/// Feed-forward torque that makes a free (Smooth-mode) rotor starting at rest
/// follow depth*(1 - cos(2*pi*rate*t))/2, i.e. oscillate between 0 and depth.
GestureProfile make_vibrato_gesture(double depth_deg, double rate_hz, double duration_s,
                                    const RotorParams& params = {});

void to_json(nlohmann::json& j, const GestureProfile& profile);
void from_json(const nlohmann::json& j, GestureProfile& profile);

}  // namespace bendaid::sim
