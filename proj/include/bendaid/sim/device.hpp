#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "bendaid/haptic/session.hpp"
#include "bendaid/sim/gesture.hpp"
#include "bendaid/sim/knob_sample.hpp"
#include "bendaid/sim/rotor.hpp"

namespace bendaid::sim {

/// Simulated TorqueTuner. Owns the rotor, the engine session and the
/// telemetry counters. Single owner; not thread safe.
class Device {
public:
    explicit Device(RotorParams params = {}, haptic::HapticModeConfig config = {},
                    RotorState initial = {});

    /// Advances one tick under `user_torque` plus the torque commanded at the
    /// pre-step state, and returns the telemetry for the new state.
    KnobSample tick(double user_torque);

    /// Mode change with zero-point reset. Returns the reset frame: angle 0,
    /// torque 0, same t_ms as the previous tick.
    KnobSample set_mode(const haptic::HapticModeConfig& config);
    KnobSample set_mode(haptic::Mode mode);
    KnobSample zero();

    /// Patches one parameter of the active config without re-zeroing.
    void set_param(std::string_view key, double value);

    const RotorParams& params() const noexcept { return params_; }
    const RotorState& rotor() const noexcept { return rotor_; }
    const haptic::EngineSession& session() const noexcept { return session_; }
    std::uint64_t ticks() const noexcept { return ticks_; }
    double time_s() const noexcept { return static_cast<double>(ticks_) * params_.dt(); }
    std::uint64_t t_ms() const noexcept;
    /// Torque that the next tick will apply.
    double commanded_torque() const noexcept { return commanded_; }

private:
    KnobSample emit(double angle_deg, double velocity_dps, double torque);

    RotorParams params_;
    RotorState rotor_;
    haptic::EngineSession session_;
    double commanded_ = 0.0;
    std::uint64_t ticks_ = 0;
    std::uint64_t seq_ = 0;
};

/// Plays a gesture against a fresh device and returns one sample per tick.
/// Deterministic in (profile, config, params).
std::vector<KnobSample> run_profile(const GestureProfile& profile,
                                    const haptic::HapticModeConfig& config,
                                    const RotorParams& params = {}, RotorState initial = {});

/// Uniform jitter source shared by run_profile and the bridge's gesture
/// player, so both produce identical torque streams for one seed.
class GestureJitter {
public:
    explicit GestureJitter(std::uint64_t seed) : engine_(seed) {}
    double next(double amplitude) noexcept;

private:
    std::mt19937_64 engine_;
};

}  // namespace bendaid::sim
