#pragma once

#include <numbers>
#include <stdexcept>

namespace bendaid::sim {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

class SimError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Rotor model in normalized units. A net normalized torque of 1 on unit
/// inertia accelerates the rotor by 1 rad/s^2 (kDegPerRad deg/s^2).
struct RotorParams {
    double inertia = 1.0;
    double damping = 0.002;  ///< normalized torque per deg/s
    double torque_scale_nmm = 70.0;  ///< informational only
    double tick_rate_hz = 1000.0;

    void validate() const;
    double dt() const noexcept { return 1.0 / tick_rate_hz; }
};

/// Absolute (device-frame) rotor state.
struct RotorState {
    double angle_deg = 0.0;
    double velocity_dps = 0.0;

    friend bool operator==(const RotorState&, const RotorState&) = default;
};

/// Angular acceleration in deg/s^2 for a net normalized torque.
double angular_accel_dps2(const RotorParams& params, double net_torque) noexcept;

/// Semi-implicit Euler: velocity first, then angle with the new velocity.
/// engine_torque is whatever the haptic engine commanded at the pre-step state.
RotorState step(const RotorState& state, const RotorParams& params, double user_torque,
                double engine_torque, double dt);

/// Kinetic energy in normalized torque * degree units, comparable with a
/// spring potential of 0.5 * k * angle^2 where k is torque per degree.
double kinetic_energy(const RotorParams& params, double velocity_dps) noexcept;

}  // namespace bendaid::sim
