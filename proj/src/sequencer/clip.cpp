#include "bendaid/sequencer/clip.hpp"

#include <algorithm>
#include <cmath>

#include "bendaid/sequencer/edit.hpp"

namespace bendaid::sequencer {

Clip::Clip(int ppq, std::uint32_t tempo_us_per_quarter, TimeSignature time_signature)
    : ppq_(ppq), tempo_us_(tempo_us_per_quarter), time_signature_(time_signature) {
    if (ppq < 1 || ppq > 0x7FFF) {
        throw EditError(EditError::Kind::Format, "ppq must be in 1..32767");
    }
    if (tempo_us_per_quarter < 1 || tempo_us_per_quarter > 0xFFFFFF) {
        throw EditError(EditError::Kind::Format, "tempo out of range");
    }
    const int den = time_signature.denominator;
    if (time_signature.numerator < 1 || time_signature.numerator > 255 || den < 1 || den > 128 ||
        (den & (den - 1)) != 0) {
        throw EditError(EditError::Kind::Format, "invalid time signature");
    }
}

const NoteEvent* Clip::find(NoteId id) const noexcept {
    auto it = std::find_if(notes_.begin(), notes_.end(), [id](const NoteEvent& n) { return n.id == id; });
    return it == notes_.end() ? nullptr : &*it;
}

double Clip::ticks_to_seconds(std::int64_t ticks) const noexcept {
    return static_cast<double>(ticks) * static_cast<double>(tempo_us_) / (1e6 * ppq_);
}

std::int64_t Clip::length_ticks() const noexcept {
    std::int64_t end = 0;
    for (const auto& n : notes_) end = std::max(end, n.end_ticks());
    return end;
}

std::vector<NoteEvent> Clip::canonical_notes() const {
    auto out = notes_;
    for (auto& n : out) n.id = 0;
    std::sort(out.begin(), out.end(), [](const NoteEvent& a, const NoteEvent& b) {
        return a.start_ticks != b.start_ticks ? a.start_ticks < b.start_ticks : a.pitch < b.pitch;
    });
    return out;
}

std::uint32_t tempo_us_from_bpm(double bpm) {
    if (!(bpm > 0.0) || !std::isfinite(bpm)) {
        throw EditError(EditError::Kind::Format, "tempo must be positive");
    }
    const double us = std::round(60'000'000.0 / bpm);
    if (us < 1.0 || us > 0xFFFFFF) {
        throw EditError(EditError::Kind::Format, "tempo out of range");
    }
    return static_cast<std::uint32_t>(us);
}

Clip make_reference_clip() {
    Clip clip(kDefaultPpq, kDefaultTempoUs, TimeSignature{4, 4});
    const std::int64_t six_quarters = 6 * kDefaultPpq;
    for (int i = 0; i < 3; ++i) {
        clip = add_note(clip, kPitchC3, i * six_quarters, six_quarters);
    }
    return clip;
}

}  // namespace bendaid::sequencer
