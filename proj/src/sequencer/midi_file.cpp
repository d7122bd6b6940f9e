#include "bendaid/sequencer/midi_file.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <utility>

#include "bendaid/sequencer/edit.hpp"

namespace bendaid::sequencer {

namespace {

class Reader {
public:
    Reader(std::span<const std::uint8_t> data, std::size_t pos, std::size_t end)
        : data_(data), pos_(pos), end_(end) {}

    std::size_t pos() const noexcept { return pos_; }
    bool done() const noexcept { return pos_ >= end_; }

    std::uint8_t peek(const char* what) const {
        if (pos_ >= end_) throw MidiError(std::string("truncated ") + what, pos_);
        return data_[pos_];
    }
    std::uint8_t u8(const char* what) {
        const auto v = peek(what);
        ++pos_;
        return v;
    }
    std::uint32_t be(int n, const char* what) {
        std::uint32_t v = 0;
        for (int i = 0; i < n; ++i) v = (v << 8) | u8(what);
        return v;
    }
    std::uint32_t vlq(const char* what) {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            const auto b = u8(what);
            v = (v << 7) | (b & 0x7F);
            if ((b & 0x80) == 0) return v;
        }
        throw MidiError(std::string("variable-length quantity too long in ") + what, pos_ - 1);
    }
    void skip(std::uint32_t n, const char* what) {
        if (n > end_ - pos_) throw MidiError(std::string("truncated ") + what, pos_);
        pos_ += n;
    }
    std::uint8_t data_byte(const char* what) {
        const auto b = u8(what);
        if (b & 0x80) throw MidiError(std::string("status byte where data expected in ") + what, pos_ - 1);
        return b;
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_;
    std::size_t end_;
};

bool tag_is(std::span<const std::uint8_t> data, std::size_t pos, const char (&tag)[5]) {
    return std::equal(tag, tag + 4, data.begin() + static_cast<std::ptrdiff_t>(pos));
}

struct RawNote {
    int pitch;
    std::int64_t start;
    std::int64_t end;
    int velocity;
    std::size_t offset;
};

struct OpenNote {
    std::int64_t start;
    int velocity;
    std::size_t offset;
};

struct TrackContext {
    std::vector<RawNote>& notes;
    std::vector<PitchBendEvent>& bends;
    std::optional<std::uint32_t>& tempo;
    std::optional<TimeSignature>& meter;
};

void parse_track(Reader& r, TrackContext& ctx) {
    std::map<std::pair<int, int>, std::deque<OpenNote>> open;
    std::int64_t tick = 0;
    std::uint8_t running = 0;
    while (!r.done()) {
        tick += r.vlq("delta time");
        const std::size_t at = r.pos();
        std::uint8_t status = r.peek("event");
        if (status & 0x80) {
            r.u8("event");
        } else if (running == 0) {
            throw MidiError("data byte without running status", at);
        } else {
            status = running;
        }

        if (status < 0xF0) {
            running = status;
            const int kind = status & 0xF0;
            const int channel = status & 0x0F;
            const auto d1 = r.data_byte("channel message");
            const int d2 = (kind == 0xC0 || kind == 0xD0) ? 0 : r.data_byte("channel message");
            if (kind == 0x90 && d2 > 0) {
                open[{channel, d1}].push_back({tick, d2, at});
            } else if (kind == 0x80 || kind == 0x90) {
                auto it = open.find({channel, d1});
                if (it != open.end() && !it->second.empty()) {
                    const auto on = it->second.front();
                    it->second.pop_front();
                    ctx.notes.push_back({d1, on.start, tick, on.velocity, on.offset});
                }
            } else if (kind == 0xE0) {
                ctx.bends.push_back({tick, channel, ((d2 << 7) | d1) - 8192});
            }
        } else if (status == 0xF0 || status == 0xF7) {
            running = 0;
            r.skip(r.vlq("sysex length"), "sysex");
        } else if (status == 0xFF) {
            running = 0;
            const auto type = r.u8("meta event");
            const auto len = r.vlq("meta length");
            const std::size_t body = r.pos();
            if (type == 0x2F) {
                r.skip(len, "meta event");
                break;
            }
            if (type == 0x51 && len == 3 && !ctx.tempo) {
                ctx.tempo = r.be(3, "tempo");
                if (*ctx.tempo == 0) throw MidiError("zero tempo", body);
            } else if (type == 0x58 && len >= 2 && !ctx.meter) {
                const int nn = r.u8("time signature");
                const int dd = r.u8("time signature");
                if (nn == 0 || dd > 7) throw MidiError("invalid time signature", body);
                ctx.meter = TimeSignature{nn, 1 << dd};
                r.skip(len - 2, "time signature");
            } else {
                r.skip(len, "meta event");
            }
        } else {
            throw MidiError("unsupported status byte", at);
        }
    }

    std::size_t first_unmatched = SIZE_MAX;
    for (const auto& [key, q] : open) {
        for (const auto& n : q) first_unmatched = std::min(first_unmatched, n.offset);
    }
    if (first_unmatched != SIZE_MAX) {
        throw MidiError("unmatched note-on", first_unmatched);
    }
}

void put_be(std::vector<std::uint8_t>& out, std::uint32_t v, int n) {
    for (int i = n - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_vlq(std::vector<std::uint8_t>& out, std::uint32_t v) {
    std::uint8_t buf[4];
    int n = 0;
    buf[n++] = v & 0x7F;
    while ((v >>= 7) != 0) buf[n++] = static_cast<std::uint8_t>(0x80 | (v & 0x7F));
    while (n > 0) out.push_back(buf[--n]);
}

struct OutEvent {
    std::int64_t tick;
    int order;  // offs, then bends, then ons at equal ticks
    std::uint8_t status;
    std::uint8_t d1;
    std::uint8_t d2;
};

}  // namespace

Clip load_midi(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) {
        throw MidiError("bad header: file too short", bytes.size());
    }
    if (!tag_is(bytes, 0, "MThd")) {
        throw MidiError("bad magic, expected MThd", 0);
    }
    Reader head(bytes, 4, bytes.size());
    const auto header_len = head.be(4, "header");
    if (header_len < 6) {
        throw MidiError("bad header: length < 6", 4);
    }
    if (header_len > bytes.size() - 8) {
        throw MidiError("bad header: truncated", bytes.size());
    }
    const auto format = head.be(2, "header");
    head.be(2, "header");  // track count; we read whatever MTrk chunks exist
    const auto division = head.be(2, "header");
    if (format > 1) {
        throw MidiError("unsupported SMF format " + std::to_string(format), 8);
    }
    if ((division & 0x8000) != 0 || division == 0) {
        throw MidiError("unsupported time division (SMPTE or zero)", 12);
    }

    std::vector<RawNote> notes;
    std::vector<PitchBendEvent> bends;
    std::optional<std::uint32_t> tempo;
    std::optional<TimeSignature> meter;
    TrackContext ctx{notes, bends, tempo, meter};

    std::size_t pos = 8 + header_len;
    while (pos < bytes.size()) {
        if (bytes.size() - pos < 8) {
            throw MidiError("truncated chunk header", pos);
        }
        Reader chunk(bytes, pos + 4, bytes.size());
        const auto len = chunk.be(4, "chunk header");
        if (len > bytes.size() - pos - 8) {
            throw MidiError("truncated chunk", pos);
        }
        if (tag_is(bytes, pos, "MTrk")) {
            Reader track(bytes, pos + 8, pos + 8 + len);
            parse_track(track, ctx);
        }
        pos += 8 + len;
    }

    Clip clip(static_cast<int>(division), tempo.value_or(kDefaultTempoUs), meter.value_or(TimeSignature{}));
    std::stable_sort(notes.begin(), notes.end(), [](const RawNote& a, const RawNote& b) {
        return a.start != b.start ? a.start < b.start : a.pitch < b.pitch;
    });
    for (const auto& n : notes) {
        try {
            clip = add_note(clip, n.pitch, n.start, n.end - n.start, n.velocity);
        } catch (const EditError& e) {
            throw MidiError(std::string("note rejected: ") + e.what(), n.offset);
        }
    }
    try {
        return with_pitch_bends(clip, std::move(bends));
    } catch (const EditError& e) {
        throw MidiError(e.what(), 0);
    }
}

std::vector<std::uint8_t> save_midi(const Clip& clip) {
    std::vector<OutEvent> events;
    events.reserve(clip.notes().size() * 2 + clip.pitch_bends().size());
    for (const auto& n : clip.notes()) {
        const auto pitch = static_cast<std::uint8_t>(n.pitch);
        events.push_back({n.start_ticks, 2, 0x90, pitch, static_cast<std::uint8_t>(n.velocity)});
        events.push_back({n.end_ticks(), 0, 0x80, pitch, 0x40});
    }
    for (const auto& b : clip.pitch_bends()) {
        const int raw = b.value + 8192;
        events.push_back({b.tick, 1, static_cast<std::uint8_t>(0xE0 | b.channel),
                          static_cast<std::uint8_t>(raw & 0x7F), static_cast<std::uint8_t>(raw >> 7)});
    }
    std::stable_sort(events.begin(), events.end(), [](const OutEvent& a, const OutEvent& b) {
        return a.tick != b.tick ? a.tick < b.tick : a.order < b.order;
    });

    std::vector<std::uint8_t> track;
    // Meta events at tick 0.
    put_vlq(track, 0);
    track.insert(track.end(), {0xFF, 0x51, 0x03});
    put_be(track, clip.tempo_us_per_quarter(), 3);
    put_vlq(track, 0);
    const auto ts = clip.time_signature();
    track.insert(track.end(), {0xFF, 0x58, 0x04, static_cast<std::uint8_t>(ts.numerator),
                               static_cast<std::uint8_t>(std::countr_zero(static_cast<unsigned>(ts.denominator))),
                               0x18, 0x08});

    std::int64_t tick = 0;
    std::uint8_t running = 0;
    for (const auto& e : events) {
        put_vlq(track, static_cast<std::uint32_t>(e.tick - tick));
        tick = e.tick;
        if (e.status != running) {
            track.push_back(e.status);
            running = e.status;
        }
        track.push_back(e.d1);
        track.push_back(e.d2);
    }
    put_vlq(track, 0);
    track.insert(track.end(), {0xFF, 0x2F, 0x00});

    std::vector<std::uint8_t> out{'M', 'T', 'h', 'd'};
    put_be(out, 6, 4);
    put_be(out, 0, 2);  // format 0
    put_be(out, 1, 2);
    put_be(out, static_cast<std::uint32_t>(clip.ppq()), 2);
    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    put_be(out, static_cast<std::uint32_t>(track.size()), 4);
    out.insert(out.end(), track.begin(), track.end());
    return out;
}

}  // namespace bendaid::sequencer
