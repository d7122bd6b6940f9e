#include "bendaid/sim/device.hpp"

#include <cmath>

namespace bendaid::sim {

Device::Device(RotorParams params, haptic::HapticModeConfig config, RotorState initial)
    : params_(params), rotor_(initial) {
    params_.validate();
    config.validate();
    session_.active_config = config;
    commanded_ = haptic::render(session_, rotor_.angle_deg, rotor_.velocity_dps, 0.0).command.torque;
}

std::uint64_t Device::t_ms() const noexcept {
    return static_cast<std::uint64_t>(std::floor(static_cast<double>(ticks_) * 1000.0 /
                                                 params_.tick_rate_hz + 1e-9));
}

KnobSample Device::emit(double angle_deg, double velocity_dps, double torque) {
    return KnobSample{++seq_, t_ms(), angle_deg, velocity_dps, torque,
                      session_.active_config.mode};
}

KnobSample Device::tick(double user_torque) {
    rotor_ = step(rotor_, params_, user_torque, commanded_, params_.dt());
    ++ticks_;
    const auto r = haptic::render(session_, rotor_.angle_deg, rotor_.velocity_dps, time_s());
    commanded_ = r.command.torque;
    return emit(r.reported.angle_deg, r.reported.velocity_dps, commanded_);
}

KnobSample Device::set_mode(const haptic::HapticModeConfig& config) {
    config.validate();
    session_ = haptic::set_mode(session_, config, rotor_.angle_deg);
    commanded_ = 0.0;
    return emit(0.0, rotor_.velocity_dps, 0.0);
}

KnobSample Device::set_mode(haptic::Mode mode) {
    auto config = session_.active_config;
    config.mode = mode;
    return set_mode(config);
}

KnobSample Device::zero() { return set_mode(session_.active_config); }

void Device::set_param(std::string_view key, double value) {
    session_.active_config = haptic::with_param(session_.active_config, key, value);
}

double GestureJitter::next(double amplitude) noexcept {
    // 53 random bits -> [0, 1); avoids the implementation-defined
    // std::uniform_real_distribution so seeds replay across toolchains.
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return amplitude * (2.0 * u - 1.0);
}

std::vector<KnobSample> run_profile(const GestureProfile& profile,
                                    const haptic::HapticModeConfig& config,
                                    const RotorParams& params, RotorState initial) {
    profile.validate();
    Device device(params, config, initial);
    const auto ticks = static_cast<std::uint64_t>(std::llround(profile.duration_s() * params.tick_rate_hz));
    std::vector<KnobSample> out;
    out.reserve(ticks);
    GestureJitter jitter(profile.seed);
    const double dt = params.dt();
    for (std::uint64_t i = 0; i < ticks; ++i) {
        double user = profile.torque_at(static_cast<double>(i) * dt);
        if (profile.jitter > 0.0) {
            user += jitter.next(profile.jitter);
        }
        out.push_back(device.tick(user));
    }
    return out;
}

}  // namespace bendaid::sim
