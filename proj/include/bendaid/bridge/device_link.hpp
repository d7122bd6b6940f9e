#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bendaid/haptic/config.hpp"
#include "bendaid/protocol/decoder.hpp"
#include "bendaid/sim/device.hpp"
#include "bendaid/sim/gesture.hpp"

namespace bendaid::bridge {

class DeviceOpenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Byte pipe to a TorqueTuner, real or simulated. Only the bridge's owner
/// thread touches a link.
class DeviceLink {
public:
    virtual ~DeviceLink() = default;

    /// Host-to-device bytes (encoded command frames).
    virtual void write(std::string_view bytes) = 0;
    /// Device-to-host bytes received since the last call. Never blocks.
    virtual std::string read_available() = 0;
    /// One loop period of device time. The simulator integrates one tick;
    /// hardware runs on its own clock so a serial link does nothing here.
    virtual void advance() = 0;
    virtual std::string describe() const = 0;
};

struct SimOptions {
    sim::RotorParams rotor{};
    haptic::HapticModeConfig haptic{};
    /// Played in a loop as the user's hand; silence when absent.
    std::optional<sim::GestureProfile> gesture;
};

/// The simulated device behind the wire protocol: parses command lines,
/// answers PING by echoing it, and prints one telemetry line per tick.
class SimulatedLink final : public DeviceLink {
public:
    explicit SimulatedLink(SimOptions options);

    void write(std::string_view bytes) override;
    std::string read_available() override;
    void advance() override;
    std::string describe() const override { return "sim"; }

    /// Live user torque added on top of the gesture.
    void set_user_torque(double torque) noexcept { live_torque_ = torque; }
    const sim::Device& device() const noexcept { return device_; }
    /// Malformed lines plus well-formed commands the device refused.
    std::uint64_t rejected_commands() const noexcept {
        return rejected_ + commands_.stats().frames_dropped;
    }

private:
    sim::Device device_;
    std::optional<sim::GestureProfile> gesture_;
    sim::GestureJitter jitter_;
    double gesture_duration_s_ = 0.0;
    double live_torque_ = 0.0;
    protocol::StreamDecoder commands_;
    std::string out_;
    std::uint64_t rejected_ = 0;
};

/// POSIX tty opened raw, 8N1, non-blocking.
class SerialLink final : public DeviceLink {
public:
    explicit SerialLink(std::string path, int baud = 115200);
    ~SerialLink() override;
    SerialLink(const SerialLink&) = delete;
    SerialLink& operator=(const SerialLink&) = delete;

    void write(std::string_view bytes) override;
    std::string read_available() override;
    void advance() override {}
    std::string describe() const override { return "serial:" + path_; }

private:
    std::string path_;
    int fd_ = -1;
};

/// "sim" or "serial:<path>". Throws DeviceOpenError for anything else or
/// when the port cannot be opened.
std::unique_ptr<DeviceLink> open_device(std::string_view descriptor, const SimOptions& sim_options);

}  // namespace bendaid::bridge
