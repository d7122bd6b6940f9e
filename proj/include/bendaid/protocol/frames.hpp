#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "bendaid/haptic/mode.hpp"
#include "bendaid/sim/knob_sample.hpp"

namespace bendaid::protocol {

/// Longest line either side may send, newline included.
inline constexpr std::size_t kMaxLineBytes = 128;

struct TelemetryFrame {
    sim::KnobSample sample;

    friend bool operator==(const TelemetryFrame&, const TelemetryFrame&) = default;
};

struct ModeCommand {
    haptic::Mode mode = haptic::Mode::Smooth;
    friend bool operator==(const ModeCommand&, const ModeCommand&) = default;
};

struct ZeroCommand {
    friend bool operator==(const ZeroCommand&, const ZeroCommand&) = default;
};

struct ParamCommand {
    std::string key;
    double value = 0.0;
    friend bool operator==(const ParamCommand&, const ParamCommand&) = default;
};

/// Liveness probe. The device echoes the same line back.
struct PingCommand {
    std::uint64_t nonce = 0;
    friend bool operator==(const PingCommand&, const PingCommand&) = default;
};

using CommandFrame = std::variant<ModeCommand, ZeroCommand, ParamCommand, PingCommand>;
using Frame = std::variant<TelemetryFrame, CommandFrame>;

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(const std::string& what, std::string token)
        : std::runtime_error(what), token_(std::move(token)) {}

    /// The offending field as it appeared on the wire.
    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

}  // namespace bendaid::protocol
