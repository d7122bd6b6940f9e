#include "bendaid/session/contour.hpp"

#include <algorithm>
#include <cmath>

namespace bendaid::session {

void PitchContour::validate() const {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].t_ms) || !std::isfinite(samples[i].cents)) {
            throw SessionError("contour point " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(samples[i].t_ms > samples[i - 1].t_ms)) {
            throw SessionError("contour times must strictly increase (point " + std::to_string(i) + ")");
        }
    }
}

ContourRecorder::ContourRecorder(PitchMapConfig config) : config_(config) { config_.validate(); }

void ContourRecorder::push(const sim::KnobSample& sample) {
    const ContourPoint point{static_cast<double>(sample.t_ms), map_angle_to_cents(config_, sample.angle_deg)};
    auto& pts = contour_.samples;
    if (!pts.empty() && !(point.t_ms > pts.back().t_ms)) {
        if (point.t_ms == pts.back().t_ms) {
            pts.back() = point;
        }
        // Older timestamps are out-of-order telemetry; ignore them.
        return;
    }
    pts.push_back(point);
}

PitchContour ContourRecorder::take() {
    PitchContour out = std::move(contour_);
    contour_ = PitchContour{};
    return out;
}

PitchContour record(const PitchMapConfig& config, std::span<const sim::KnobSample> samples) {
    ContourRecorder recorder(config);
    for (const auto& s : samples) recorder.push(s);
    return recorder.take();
}

double interpolate(const PitchContour& contour, double t_ms) {
    const auto& pts = contour.samples;
    if (pts.empty()) {
        throw SessionError("cannot interpolate an empty contour");
    }
    if (t_ms <= pts.front().t_ms) return pts.front().cents;
    if (t_ms >= pts.back().t_ms) return pts.back().cents;
    auto hi = std::upper_bound(pts.begin(), pts.end(), t_ms,
                               [](double t, const ContourPoint& p) { return t < p.t_ms; });
    auto lo = hi - 1;
    const double u = (t_ms - lo->t_ms) / (hi->t_ms - lo->t_ms);
    return lo->cents + u * (hi->cents - lo->cents);
}

}  // namespace bendaid::session
