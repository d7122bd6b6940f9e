#pragma once

#include <string>
#include <string_view>

#include "bendaid/protocol/frames.hpp"

namespace bendaid::protocol {

/// `TT,<seq>,<t_ms>,<angle>,<velocity>,<torque>,<MODE>\n` with floats at
/// exactly four decimals (round half to even). Throws ProtocolError for
/// non-finite or out-of-range values that would break the line limit.
std::string encode_telemetry(const sim::KnobSample& sample);

/// Parses one line (trailing "\n" or "\r\n" optional). Strict: throws
/// ProtocolError on any deviation from the grammar.
TelemetryFrame decode_telemetry(std::string_view line);

std::string encode_command(const CommandFrame& command);

/// Throws ProtocolError whose token() names the offending field, e.g.
/// "MAGNET" for `MODE,MAGNET`.
CommandFrame parse_command(std::string_view line);

/// Either frame kind; dispatches on the leading tag.
Frame parse_line(std::string_view line);

std::string encode_frame(const Frame& frame);

/// Value the receiver sees for `x` after a round trip through the 4-decimal
/// wire format.
double quantize4(double x);

/// Sample as it will decode on the other end of the link.
sim::KnobSample quantized(const sim::KnobSample& sample);

}  // namespace bendaid::protocol
