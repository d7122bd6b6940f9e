#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bendaid::sequencer {

// MIDI numbering with C-1 = 0.
inline constexpr int kLowestPitch = 24;   // C1
inline constexpr int kHighestPitch = 115;  // G8
inline constexpr int kPitchC3 = 48;

inline constexpr int kDefaultPpq = 480;
// Largest note end a single SMF delta-time can reach from tick 0.
inline constexpr std::int64_t kMaxTick = 0x0FFFFFFF;
inline constexpr std::uint32_t kDefaultTempoUs = 500'000;  // 120 bpm

using NoteId = std::uint32_t;

struct NoteEvent {
    NoteId id = 0;
    int pitch = kPitchC3;
    std::int64_t start_ticks = 0;
    std::int64_t duration_ticks = 1;
    int velocity = 100;

    std::int64_t end_ticks() const noexcept { return start_ticks + duration_ticks; }

    friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

struct TimeSignature {
    int numerator = 4;
    int denominator = 4;

    friend bool operator==(const TimeSignature&, const TimeSignature&) = default;
};

/// Parsed pitch-wheel event; value is centred on 0 (-8192..8191).
struct PitchBendEvent {
    std::int64_t tick = 0;
    int channel = 0;
    int value = 0;

    friend bool operator==(const PitchBendEvent&, const PitchBendEvent&) = default;
};

class EditError : public std::runtime_error {
public:
    enum class Kind { PitchRange, Overlap, MinDuration, NegativeStart, Velocity, UnknownId, Format };

    EditError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// The piano-roll document. Tempo is stored as microseconds per quarter so
/// it survives a trip through a MIDI file unchanged. Only the functions in
/// edit.hpp can change a clip, and each one either yields a clip that still
/// satisfies every invariant or throws and leaves its input untouched.
class Clip {
public:
    Clip() = default;
    explicit Clip(int ppq, std::uint32_t tempo_us_per_quarter = kDefaultTempoUs,
                  TimeSignature time_signature = {});

    const std::vector<NoteEvent>& notes() const noexcept { return notes_; }
    const std::set<NoteId>& selection() const noexcept { return selection_; }
    const std::vector<PitchBendEvent>& pitch_bends() const noexcept { return pitch_bends_; }
    int ppq() const noexcept { return ppq_; }
    std::uint32_t tempo_us_per_quarter() const noexcept { return tempo_us_; }
    double tempo_bpm() const noexcept { return 60'000'000.0 / tempo_us_; }
    TimeSignature time_signature() const noexcept { return time_signature_; }

    const NoteEvent* find(NoteId id) const noexcept;
    double ticks_to_seconds(std::int64_t ticks) const noexcept;
    /// End of the last note, in ticks.
    std::int64_t length_ticks() const noexcept;

    /// Notes ordered by (start, pitch) with ids and selection dropped; the
    /// form used to compare clips by musical content.
    std::vector<NoteEvent> canonical_notes() const;

    friend bool operator==(const Clip&, const Clip&) = default;

private:
    friend Clip add_note(const Clip&, int, std::int64_t, std::int64_t, int);
    friend Clip select(const Clip&, NoteId, bool);
    friend Clip clear_selection(const Clip&);
    friend Clip move_note(const Clip&, NoteId, std::int64_t, int);
    friend Clip resize_note(const Clip&, NoteId, std::optional<std::int64_t>,
                            std::optional<std::int64_t>);
    friend Clip remove_note(const Clip&, NoteId);
    friend Clip clear(const Clip&);
    friend Clip with_pitch_bends(const Clip&, std::vector<PitchBendEvent>);

    std::vector<NoteEvent> notes_;
    std::set<NoteId> selection_;
    std::vector<PitchBendEvent> pitch_bends_;
    int ppq_ = kDefaultPpq;
    std::uint32_t tempo_us_ = kDefaultTempoUs;
    TimeSignature time_signature_{};
    NoteId next_id_ = 1;
};

/// Tempo in bpm to the nearest whole microsecond per quarter.
std::uint32_t tempo_us_from_bpm(double bpm);

/// The mimicry stimulus: three back-to-back C3 notes of six quarters each,
/// 120 bpm, 4/4, ppq 480.
Clip make_reference_clip();

}  // namespace bendaid::sequencer
