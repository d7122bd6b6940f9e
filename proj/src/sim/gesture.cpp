#include "bendaid/sim/gesture.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

namespace bendaid::sim {

namespace {

double shape_value(const TorqueShape& shape, double t, double duration) noexcept {
    return std::visit(
        [&](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ConstantTorque>) {
                return s.value;
            } else if constexpr (std::is_same_v<S, RampTorque>) {
                return s.from + (s.to - s.from) * (t / duration);
            } else {
                return s.offset +
                       s.amplitude * std::sin(2.0 * std::numbers::pi * s.freq_hz * t + s.phase_rad);
            }
        },
        shape);
}

}  // namespace

void GestureProfile::validate() const {
    for (const auto& seg : segments) {
        if (!(seg.duration_s > 0.0) || !std::isfinite(seg.duration_s)) {
            throw SimError("gesture segment duration must be finite and > 0");
        }
    }
    if (!(jitter >= 0.0) || !std::isfinite(jitter)) {
        throw SimError("gesture jitter must be finite and >= 0");
    }
}

double GestureProfile::duration_s() const noexcept {
    double total = 0.0;
    for (const auto& seg : segments) total += seg.duration_s;
    return total;
}

double GestureProfile::torque_at(double t_s) const noexcept {
    double start = 0.0;
    for (const auto& seg : segments) {
        if (t_s < start + seg.duration_s) {
            return shape_value(seg.shape, t_s - start, seg.duration_s);
        }
        start += seg.duration_s;
    }
    return 0.0;
}

GestureProfile make_vibrato_gesture(double depth_deg, double rate_hz, double duration_s,
                                    const RotorParams& params) {
    if (!(depth_deg > 0.0 && depth_deg <= 90.0)) {
        throw SimError("vibrato depth must be in (0, 90] degrees");
    }
    if (!(rate_hz > 0.0 && rate_hz <= 20.0)) {
        throw SimError("vibrato rate must be in (0, 20] Hz");
    }
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
        throw SimError("vibrato duration must be > 0");
    }
    params.validate();

    // theta = D/2 (1 - cos wt)  =>  theta' = D w/2 sin wt, theta'' = D w^2/2 cos wt.
    // tau = I theta''/kDegPerRad + c theta' = a cos wt + b sin wt.
    const double w = 2.0 * std::numbers::pi * rate_hz;
    const double a = params.inertia * depth_deg * w * w / (2.0 * kDegPerRad);
    const double b = params.damping * depth_deg * w / 2.0;
    SineTorque sine;
    sine.amplitude = std::hypot(a, b);
    sine.freq_hz = rate_hz;
    // b sin + a cos = R sin(wt + atan2(a, b)). The tick applies the torque
    // sampled at t over [t, t + dt], so sample half a tick ahead; without
    // this the rotor drifts by about D w^2 dt / 4 deg/s.
    sine.phase_rad = std::atan2(a, b) + 0.5 * w * params.dt();
    return GestureProfile{{GestureSegment{duration_s, sine}}, 0, 0.0};
}

void to_json(nlohmann::json& j, const GestureProfile& profile) {
    j = nlohmann::json::object();
    j["seed"] = profile.seed;
    j["jitter"] = profile.jitter;
    auto& segs = j["segments"] = nlohmann::json::array();
    for (const auto& seg : profile.segments) {
        nlohmann::json s;
        s["duration_s"] = seg.duration_s;
        std::visit(
            [&](const auto& shape) {
                using S = std::decay_t<decltype(shape)>;
                if constexpr (std::is_same_v<S, ConstantTorque>) {
                    s["type"] = "constant";
                    s["value"] = shape.value;
                } else if constexpr (std::is_same_v<S, RampTorque>) {
                    s["type"] = "ramp";
                    s["from"] = shape.from;
                    s["to"] = shape.to;
                } else {
                    s["type"] = "sine";
                    s["amplitude"] = shape.amplitude;
                    s["freq_hz"] = shape.freq_hz;
                    s["phase_rad"] = shape.phase_rad;
                    s["offset"] = shape.offset;
                }
            },
            seg.shape);
        segs.push_back(std::move(s));
    }
}

void from_json(const nlohmann::json& j, GestureProfile& profile) {
    profile = GestureProfile{};
    profile.seed = j.value("seed", std::uint64_t{0});
    profile.jitter = j.value("jitter", 0.0);
    for (const auto& s : j.at("segments")) {
        GestureSegment seg;
        seg.duration_s = s.at("duration_s").get<double>();
        const auto type = s.at("type").get<std::string>();
        if (type == "constant") {
            seg.shape = ConstantTorque{s.at("value").get<double>()};
        } else if (type == "ramp") {
            seg.shape = RampTorque{s.at("from").get<double>(), s.at("to").get<double>()};
        } else if (type == "sine") {
            seg.shape = SineTorque{s.at("amplitude").get<double>(), s.at("freq_hz").get<double>(),
                                   s.value("phase_rad", 0.0), s.value("offset", 0.0)};
        } else {
            throw SimError("unknown gesture segment type '" + type + "'");
        }
        profile.segments.push_back(std::move(seg));
    }
    profile.validate();
}

}  // namespace bendaid::sim
