#include "bendaid/bridge/device_link.hpp"

#include <cmath>

#include "bendaid/protocol/codec.hpp"

namespace bendaid::bridge {

SimulatedLink::SimulatedLink(SimOptions options)
    : device_(options.rotor, options.haptic),
      gesture_(std::move(options.gesture)),
      jitter_(gesture_ ? gesture_->seed : 0) {
    if (gesture_) {
        gesture_->validate();
        gesture_duration_s_ = gesture_->duration_s();
    }
}

void SimulatedLink::write(std::string_view bytes) {
    for (const auto& frame : commands_.feed(bytes)) {
        const auto* cmd = std::get_if<protocol::CommandFrame>(&frame);
        if (cmd == nullptr) {
            ++rejected_;
            continue;
        }
        std::visit(
            [&](const auto& c) {
                using C = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<C, protocol::ModeCommand>) {
                    out_ += protocol::encode_telemetry(device_.set_mode(c.mode));
                } else if constexpr (std::is_same_v<C, protocol::ZeroCommand>) {
                    out_ += protocol::encode_telemetry(device_.zero());
                } else if constexpr (std::is_same_v<C, protocol::ParamCommand>) {
                    try {
                        device_.set_param(c.key, c.value);
                    } catch (const haptic::ConfigError&) {
                        ++rejected_;
                    }
                } else {
                    out_ += protocol::encode_command(c);
                }
            },
            *cmd);
    }
}

std::string SimulatedLink::read_available() { return std::exchange(out_, {}); }

void SimulatedLink::advance() {
    double user = live_torque_;
    if (gesture_ && gesture_duration_s_ > 0.0) {
        const double t = std::fmod(device_.time_s(), gesture_duration_s_);
        user += gesture_->torque_at(t);
        if (gesture_->jitter > 0.0) user += jitter_.next(gesture_->jitter);
    }
    out_ += protocol::encode_telemetry(device_.tick(user));
}

std::unique_ptr<DeviceLink> open_device(std::string_view descriptor, const SimOptions& sim_options) {
    if (descriptor == "sim") {
        return std::make_unique<SimulatedLink>(sim_options);
    }
    if (descriptor.starts_with("serial:")) {
        return std::make_unique<SerialLink>(std::string(descriptor.substr(7)));
    }
    throw DeviceOpenError("unknown device descriptor '" + std::string(descriptor) +
                          "' (expected sim or serial:<path>)");
}

}  // namespace bendaid::bridge
