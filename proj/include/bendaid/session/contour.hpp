#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bendaid/session/pitch_map.hpp"
#include "bendaid/sim/knob_sample.hpp"

namespace bendaid::session {

enum class ContourSource { Recorded, Reference };

struct ContourPoint {
    double t_ms = 0.0;
    double cents = 0.0;

    friend bool operator==(const ContourPoint&, const ContourPoint&) = default;
};

/// Pitch offset over time. Times strictly increase.
struct PitchContour {
    std::vector<ContourPoint> samples;
    ContourSource source = ContourSource::Recorded;

    void validate() const;
    bool empty() const noexcept { return samples.empty(); }

    friend bool operator==(const PitchContour&, const PitchContour&) = default;
};

/// Telemetry consumer that maps each tick's angle to cents. A frame that
/// repeats the previous timestamp (the reset frame a mode change emits)
/// replaces the previous point, so times stay strictly increasing.
class ContourRecorder {
public:
    explicit ContourRecorder(PitchMapConfig config = {});

    void push(const sim::KnobSample& sample);
    const PitchContour& contour() const noexcept { return contour_; }
    PitchContour take();

private:
    PitchMapConfig config_;
    PitchContour contour_;
};

PitchContour record(const PitchMapConfig& config, std::span<const sim::KnobSample> samples);

/// Linear interpolation at t_ms; clamps to the end values outside the range.
double interpolate(const PitchContour& contour, double t_ms);

}  // namespace bendaid::session
