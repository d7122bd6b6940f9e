#pragma once

#include "bendaid/sequencer/clip.hpp"
#include "bendaid/session/contour.hpp"

namespace bendaid::session {

struct ReferenceVibrato {
    double depth_cents = 50.0;
    double rate_hz = 5.0;
    double onset_s = 0.5;  ///< flat lead-in at the start of every note
    double sample_rate_hz = 1000.0;
};

/// Raised-cosine vibrato over every note of `clip`:
/// cents = depth * (1 - cos(2*pi*rate*(t_note - onset))) / 2 after the onset,
/// 0 before it. Sampled on [clip start, clip end) at sample_rate_hz.
PitchContour reference_contour(const ReferenceVibrato& shape = {},
                               const sequencer::Clip& clip = sequencer::make_reference_clip());

/// Value of the reference shape at time t_s into a note.
double reference_note_cents(const ReferenceVibrato& shape, double t_note_s) noexcept;

}  // namespace bendaid::session
