#pragma once

#include <optional>

#include "bendaid/sequencer/clip.hpp"

namespace bendaid::sequencer {

// Piano-roll edit operations. All are pure: they return the edited clip and
// throw EditError without side effects when the result would be invalid.

/// Rejects pitches outside C1..G8, durations < 1, and same-pitch overlap.
Clip add_note(const Clip& clip, int pitch, std::int64_t start_ticks, std::int64_t duration_ticks,
              int velocity = 100);

/// Click selection. With extend=false the selection becomes {id}.
Clip select(const Clip& clip, NoteId id, bool extend = false);
Clip clear_selection(const Clip& clip);

Clip move_note(const Clip& clip, NoteId id, std::int64_t delta_ticks, int delta_pitch);

/// Drag either edge. A missing edge keeps its current position.
Clip resize_note(const Clip& clip, NoteId id, std::optional<std::int64_t> new_start,
                 std::optional<std::int64_t> new_end);

Clip remove_note(const Clip& clip, NoteId id);

/// Removes every note and empties the selection. Tempo and meter stay.
Clip clear(const Clip& clip);

Clip with_pitch_bends(const Clip& clip, std::vector<PitchBendEvent> bends);

}  // namespace bendaid::sequencer
