#include "bendaid/sequencer/clip_json.hpp"

#include <map>

#include "bendaid/sequencer/edit.hpp"

namespace bendaid::sequencer {

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw EditError(EditError::Kind::Format, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw EditError(EditError::Kind::Format, std::string("bad type for field '") + key + "'");
    }
}

template <typename T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return field<T>(j, key);
}

}  // namespace

nlohmann::json clip_to_json(const Clip& clip) {
    nlohmann::json notes = nlohmann::json::array();
    for (const auto& n : clip.notes()) {
        notes.push_back({{"id", n.id},
                         {"pitch", n.pitch},
                         {"start_ticks", n.start_ticks},
                         {"duration_ticks", n.duration_ticks},
                         {"velocity", n.velocity}});
    }
    return {{"notes", std::move(notes)},
            {"ppq", clip.ppq()},
            {"tempo_bpm", clip.tempo_bpm()},
            {"time_signature",
             {{"numerator", clip.time_signature().numerator},
              {"denominator", clip.time_signature().denominator}}},
            {"selection", clip.selection()}};
}

Clip clip_from_json(const nlohmann::json& j) {
    const int ppq = optional_field<int>(j, "ppq").value_or(kDefaultPpq);
    const auto bpm = optional_field<double>(j, "tempo_bpm");
    TimeSignature ts;
    if (j.contains("time_signature")) {
        const auto& t = j.at("time_signature");
        ts = TimeSignature{field<int>(t, "numerator"), field<int>(t, "denominator")};
    }
    Clip clip(ppq, bpm ? tempo_us_from_bpm(*bpm) : kDefaultTempoUs, ts);
    std::map<NoteId, NoteId> renumbered;
    if (j.contains("notes")) {
        if (!j.at("notes").is_array()) {
            throw EditError(EditError::Kind::Format, "'notes' must be an array");
        }
        for (const auto& n : j.at("notes")) {
            clip = add_note(clip, field<int>(n, "pitch"), field<std::int64_t>(n, "start_ticks"),
                            field<std::int64_t>(n, "duration_ticks"),
                            optional_field<int>(n, "velocity").value_or(100));
            if (const auto old_id = optional_field<NoteId>(n, "id")) renumbered[*old_id] = clip.notes().back().id;
        }
    }
    if (j.contains("selection")) {
        if (!j.at("selection").is_array()) {
            throw EditError(EditError::Kind::Format, "'selection' must be an array");
        }
        for (const auto& s : j.at("selection")) {
            if (!s.is_number_unsigned()) throw EditError(EditError::Kind::Format, "bad selection id");
            const auto it = renumbered.find(s.get<NoteId>());
            if (it == renumbered.end()) {
                throw EditError(EditError::Kind::UnknownId, "selection names an unknown note id");
            }
            clip = select(clip, it->second, true);
        }
    }
    return clip;
}

Clip apply_edit(const Clip& clip, const nlohmann::json& request) {
    const auto op = field<std::string>(request, "op");
    if (op == "add") {
        return add_note(clip, field<int>(request, "pitch"), field<std::int64_t>(request, "start_ticks"),
                        field<std::int64_t>(request, "duration_ticks"),
                        optional_field<int>(request, "velocity").value_or(100));
    }
    if (op == "select") {
        return select(clip, field<NoteId>(request, "id"), optional_field<bool>(request, "extend").value_or(false));
    }
    if (op == "deselect") {
        return clear_selection(clip);
    }
    if (op == "move") {
        return move_note(clip, field<NoteId>(request, "id"),
                         optional_field<std::int64_t>(request, "delta_ticks").value_or(0),
                         optional_field<int>(request, "delta_pitch").value_or(0));
    }
    if (op == "resize") {
        return resize_note(clip, field<NoteId>(request, "id"),
                           optional_field<std::int64_t>(request, "start_ticks"),
                           optional_field<std::int64_t>(request, "end_ticks"));
    }
    if (op == "remove") {
        return remove_note(clip, field<NoteId>(request, "id"));
    }
    if (op == "clear") {
        return clear(clip);
    }
    throw EditError(EditError::Kind::Format, "unknown edit op '" + op + "'");
}

}  // namespace bendaid::sequencer
