#include "bendaid/session/reference.hpp"

#include <cmath>
#include <numbers>

namespace bendaid::session {

double reference_note_cents(const ReferenceVibrato& shape, double t_note_s) noexcept {
    if (t_note_s < shape.onset_s) return 0.0;
    const double phase = 2.0 * std::numbers::pi * shape.rate_hz * (t_note_s - shape.onset_s);
    return shape.depth_cents * (1.0 - std::cos(phase)) / 2.0;
}

PitchContour reference_contour(const ReferenceVibrato& shape, const sequencer::Clip& clip) {
    if (!(shape.depth_cents > 0.0) || !(shape.rate_hz > 0.0) || !(shape.onset_s >= 0.0) ||
        !(shape.sample_rate_hz > 0.0)) {
        throw SessionError("reference vibrato needs depth > 0, rate > 0, onset >= 0");
    }
    PitchContour contour;
    contour.source = ContourSource::Reference;
    if (clip.notes().empty()) return contour;

    const auto notes = clip.canonical_notes();
    const double period_ms = 1000.0 / shape.sample_rate_hz;
    const double start_ms = clip.ticks_to_seconds(notes.front().start_ticks) * 1000.0;
    const double end_ms = clip.ticks_to_seconds(clip.length_ticks()) * 1000.0;
    const auto count = static_cast<std::size_t>(std::llround((end_ms - start_ms) / period_ms));
    contour.samples.reserve(count);

    std::size_t note = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t_ms = start_ms + static_cast<double>(i) * period_ms;
        // Latest note that has started by t; gaps between notes read as 0 cents.
        while (note + 1 < notes.size() && clip.ticks_to_seconds(notes[note + 1].start_ticks) * 1000.0 <= t_ms) {
            ++note;
        }
        const double note_start_s = clip.ticks_to_seconds(notes[note].start_ticks);
        const double note_end_s = clip.ticks_to_seconds(notes[note].end_ticks());
        const double t_s = t_ms / 1000.0;
        const double cents = t_s < note_end_s ? reference_note_cents(shape, t_s - note_start_s) : 0.0;
        contour.samples.push_back({t_ms, cents});
    }
    return contour;
}

}  // namespace bendaid::session
