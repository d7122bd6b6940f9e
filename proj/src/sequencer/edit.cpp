#include "bendaid/sequencer/edit.hpp"

#include <algorithm>
#include <string>

namespace bendaid::sequencer {

namespace {

void check_note(const NoteEvent& n) {
    if (n.pitch < kLowestPitch || n.pitch > kHighestPitch) {
        throw EditError(EditError::Kind::PitchRange,
                        "pitch " + std::to_string(n.pitch) + " outside C1..G8 (24..115)");
    }
    if (n.duration_ticks < 1) {
        throw EditError(EditError::Kind::MinDuration, "note duration must be at least 1 tick");
    }
    if (n.start_ticks < 0) {
        throw EditError(EditError::Kind::NegativeStart, "note cannot start before tick 0");
    }
    if (n.start_ticks > kMaxTick || n.duration_ticks > kMaxTick || n.end_ticks() > kMaxTick) {
        throw EditError(EditError::Kind::Format, "note ends past the last representable tick");
    }
    if (n.velocity < 1 || n.velocity > 127) {
        throw EditError(EditError::Kind::Velocity, "velocity must be in 1..127");
    }
}

void check_overlap(const std::vector<NoteEvent>& notes, const NoteEvent& candidate) {
    for (const auto& n : notes) {
        if (n.id == candidate.id || n.pitch != candidate.pitch) continue;
        if (candidate.start_ticks < n.end_ticks() && n.start_ticks < candidate.end_ticks()) {
            throw EditError(EditError::Kind::Overlap,
                            "note overlaps note " + std::to_string(n.id) + " at the same pitch");
        }
    }
}

std::vector<NoteEvent>::iterator locate(std::vector<NoteEvent>& notes, NoteId id) {
    auto it = std::find_if(notes.begin(), notes.end(), [id](const NoteEvent& n) { return n.id == id; });
    if (it == notes.end()) {
        throw EditError(EditError::Kind::UnknownId, "no note with id " + std::to_string(id));
    }
    return it;
}

}  // namespace

Clip add_note(const Clip& clip, int pitch, std::int64_t start_ticks, std::int64_t duration_ticks,
              int velocity) {
    NoteEvent note{clip.next_id_, pitch, start_ticks, duration_ticks, velocity};
    check_note(note);
    check_overlap(clip.notes_, note);
    Clip out = clip;
    out.notes_.push_back(note);
    ++out.next_id_;
    return out;
}

Clip select(const Clip& clip, NoteId id, bool extend) {
    if (clip.find(id) == nullptr) {
        throw EditError(EditError::Kind::UnknownId, "no note with id " + std::to_string(id));
    }
    Clip out = clip;
    if (!extend) out.selection_.clear();
    out.selection_.insert(id);
    return out;
}

Clip clear_selection(const Clip& clip) {
    Clip out = clip;
    out.selection_.clear();
    return out;
}

Clip move_note(const Clip& clip, NoteId id, std::int64_t delta_ticks, int delta_pitch) {
    Clip out = clip;
    auto it = locate(out.notes_, id);
    it->start_ticks += delta_ticks;
    it->pitch += delta_pitch;
    check_note(*it);
    check_overlap(out.notes_, *it);
    return out;
}

Clip resize_note(const Clip& clip, NoteId id, std::optional<std::int64_t> new_start,
                 std::optional<std::int64_t> new_end) {
    Clip out = clip;
    auto it = locate(out.notes_, id);
    const std::int64_t start = new_start.value_or(it->start_ticks);
    const std::int64_t end = new_end.value_or(it->end_ticks());
    it->start_ticks = start;
    it->duration_ticks = end - start;
    check_note(*it);
    check_overlap(out.notes_, *it);
    return out;
}

Clip remove_note(const Clip& clip, NoteId id) {
    Clip out = clip;
    out.notes_.erase(locate(out.notes_, id));
    out.selection_.erase(id);
    return out;
}

Clip clear(const Clip& clip) {
    Clip out = clip;
    out.notes_.clear();
    out.selection_.clear();
    return out;
}

Clip with_pitch_bends(const Clip& clip, std::vector<PitchBendEvent> bends) {
    for (const auto& b : bends) {
        if (b.tick < 0 || b.tick > kMaxTick || b.channel < 0 || b.channel > 15 || b.value < -8192 || b.value > 8191) {
            throw EditError(EditError::Kind::Format, "invalid pitch-bend event");
        }
    }
    std::stable_sort(bends.begin(), bends.end(),
                     [](const PitchBendEvent& a, const PitchBendEvent& b) { return a.tick < b.tick; });
    Clip out = clip;
    out.pitch_bends_ = std::move(bends);
    return out;
}

}  // namespace bendaid::sequencer
