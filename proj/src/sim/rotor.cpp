#include "bendaid/sim/rotor.hpp"

#include <cmath>

namespace bendaid::sim {

void RotorParams::validate() const {
    if (!(inertia > 0.0) || !std::isfinite(inertia)) {
        throw SimError("rotor inertia must be > 0");
    }
    if (!(damping >= 0.0) || !std::isfinite(damping)) {
        throw SimError("rotor damping must be >= 0");
    }
    if (!(tick_rate_hz >= 100.0) || !std::isfinite(tick_rate_hz)) {
        throw SimError("tick rate must be >= 100 Hz");
    }
}

double angular_accel_dps2(const RotorParams& params, double net_torque) noexcept {
    return kDegPerRad * net_torque / params.inertia;
}

RotorState step(const RotorState& state, const RotorParams& params, double user_torque,
                double engine_torque, double dt) {
    if (!(dt > 0.0) || dt > 0.01) {
        throw SimError("step dt must be in (0, 0.01]");
    }
    const double net = user_torque + engine_torque - params.damping * state.velocity_dps;
    const double v = state.velocity_dps + dt * angular_accel_dps2(params, net);
    return {state.angle_deg + dt * v, v};
}

double kinetic_energy(const RotorParams& params, double velocity_dps) noexcept {
    // 0.5 * I * w^2 with w in rad/s, expressed per degree of travel.
    return 0.5 * params.inertia * velocity_dps * velocity_dps / kDegPerRad;
}

}  // namespace bendaid::sim
