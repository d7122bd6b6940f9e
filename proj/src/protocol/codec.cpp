#include "bendaid/protocol/codec.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <vector>

#include "bendaid/haptic/config.hpp"

namespace bendaid::protocol {

namespace {

// Keeps every telemetry line well under kMaxLineBytes.
constexpr double kMaxMagnitude = 1e12;

void append_fixed4(std::string& out, double x, const char* field) {
    if (!std::isfinite(x) || std::abs(x) >= kMaxMagnitude) {
        throw ProtocolError(std::string("telemetry field out of range: ") + field, field);
    }
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 4);
    std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));
    if (text == "-0.0000") {
        text = "0.0000";
    }
    out.append(text);
}

void append_uint(std::string& out, std::uint64_t v) {
    std::array<char, 24> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

std::string_view strip_eol(std::string_view line) {
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// "0" or a digit run without a leading zero.
bool canonical_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!is_digit(c)) return false;
    }
    return s.size() == 1 || s.front() != '0';
}

std::uint64_t parse_uint(std::string_view token, const char* field) {
    std::uint64_t v = 0;
    if (!canonical_digits(token) || token.size() > 20) {
        throw ProtocolError(std::string("malformed ") + field, std::string(token));
    }
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ProtocolError(std::string("malformed ") + field, std::string(token));
    }
    return v;
}

// Canonical fixed-4 decimal as produced by append_fixed4.
double parse_fixed4(std::string_view token, const char* field) {
    std::string_view body = token;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto dot = body.find('.');
    const bool shape_ok = dot != std::string_view::npos && canonical_digits(body.substr(0, dot)) &&
                          body.size() - dot - 1 == 4;
    bool frac_ok = shape_ok;
    if (shape_ok) {
        for (char c : body.substr(dot + 1)) frac_ok = frac_ok && is_digit(c);
    }
    if (!frac_ok || token == "-0.0000") {
        throw ProtocolError(std::string("malformed ") + field, std::string(token));
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != token.data() + token.size() || std::abs(v) >= kMaxMagnitude) {
        throw ProtocolError(std::string("malformed ") + field, std::string(token));
    }
    return v;
}

double parse_general(std::string_view token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw ProtocolError("malformed PARAM value", std::string(token));
    }
    return v;
}

haptic::Mode parse_mode(std::string_view token) {
    auto mode = haptic::parse_mode_name(token);
    if (!mode) {
        throw ProtocolError("unknown mode '" + std::string(token) + "'", std::string(token));
    }
    return *mode;
}

void expect_arity(const std::vector<std::string_view>& fields, std::size_t n, std::string_view line) {
    if (fields.size() != n) {
        throw ProtocolError("wrong field count", std::string(line));
    }
}

}  // namespace

std::string encode_telemetry(const sim::KnobSample& s) {
    std::string out;
    out.reserve(96);
    out.append("TT,");
    append_uint(out, s.seq);
    out.push_back(',');
    append_uint(out, s.t_ms);
    out.push_back(',');
    append_fixed4(out, s.angle_deg, "angle_deg");
    out.push_back(',');
    append_fixed4(out, s.velocity_dps, "velocity_dps");
    out.push_back(',');
    append_fixed4(out, s.torque, "torque");
    out.push_back(',');
    out.append(haptic::mode_name(s.mode));
    out.push_back('\n');
    return out;
}

TelemetryFrame decode_telemetry(std::string_view raw) {
    const auto line = strip_eol(raw);
    if (line.size() + 1 > kMaxLineBytes) {
        throw ProtocolError("line too long", "");
    }
    const auto f = split_fields(line);
    expect_arity(f, 7, line);
    if (f[0] != "TT") {
        throw ProtocolError("not a telemetry frame", std::string(f[0]));
    }
    TelemetryFrame frame;
    frame.sample.seq = parse_uint(f[1], "seq");
    frame.sample.t_ms = parse_uint(f[2], "t_ms");
    frame.sample.angle_deg = parse_fixed4(f[3], "angle_deg");
    frame.sample.velocity_dps = parse_fixed4(f[4], "velocity_dps");
    frame.sample.torque = parse_fixed4(f[5], "torque");
    frame.sample.mode = parse_mode(f[6]);
    return frame;
}

std::string encode_command(const CommandFrame& command) {
    return std::visit(
        [](const auto& c) -> std::string {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ModeCommand>) {
                return "MODE," + std::string(haptic::mode_name(c.mode)) + "\n";
            } else if constexpr (std::is_same_v<C, ZeroCommand>) {
                return "ZERO\n";
            } else if constexpr (std::is_same_v<C, ParamCommand>) {
                if (!haptic::is_param_key(c.key)) {
                    throw ProtocolError("unknown parameter '" + c.key + "'", c.key);
                }
                if (!std::isfinite(c.value)) {
                    throw ProtocolError("non-finite PARAM value", c.key);
                }
                std::array<char, 32> buf{};
                auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), c.value);
                return "PARAM," + c.key + "," + std::string(buf.data(), end) + "\n";
            } else {
                std::string out = "PING,";
                append_uint(out, c.nonce);
                out.push_back('\n');
                return out;
            }
        },
        command);
}

CommandFrame parse_command(std::string_view raw) {
    const auto line = strip_eol(raw);
    if (line.size() + 1 > kMaxLineBytes) {
        throw ProtocolError("line too long", "");
    }
    const auto f = split_fields(line);
    if (f[0] == "MODE") {
        expect_arity(f, 2, line);
        return ModeCommand{parse_mode(f[1])};
    }
    if (f[0] == "ZERO") {
        expect_arity(f, 1, line);
        return ZeroCommand{};
    }
    if (f[0] == "PARAM") {
        expect_arity(f, 3, line);
        if (!haptic::is_param_key(f[1])) {
            throw ProtocolError("unknown parameter '" + std::string(f[1]) + "'", std::string(f[1]));
        }
        return ParamCommand{std::string(f[1]), parse_general(f[2])};
    }
    if (f[0] == "PING") {
        expect_arity(f, 2, line);
        return PingCommand{parse_uint(f[1], "nonce")};
    }
    throw ProtocolError("unknown command '" + std::string(f[0]) + "'", std::string(f[0]));
}

Frame parse_line(std::string_view line) {
    if (line.starts_with("TT,")) {
        return decode_telemetry(line);
    }
    return parse_command(line);
}

std::string encode_frame(const Frame& frame) {
    if (const auto* t = std::get_if<TelemetryFrame>(&frame)) {
        return encode_telemetry(t->sample);
    }
    return encode_command(std::get<CommandFrame>(frame));
}

double quantize4(double x) {
    std::string s;
    append_fixed4(s, x, "value");
    return parse_fixed4(s, "value");
}

sim::KnobSample quantized(const sim::KnobSample& sample) {
    auto q = sample;
    q.angle_deg = quantize4(sample.angle_deg);
    q.velocity_dps = quantize4(sample.velocity_dps);
    q.torque = quantize4(sample.torque);
    return q;
}

}  // namespace bendaid::protocol
