#pragma once

#include <nlohmann/json.hpp>

#include "bendaid/sequencer/clip.hpp"

namespace bendaid::sequencer {

/// {"notes":[{id,pitch,start_ticks,duration_ticks,velocity}], "ppq",
///  "tempo_bpm", "time_signature":{"numerator","denominator"}, "selection":[ids]}
nlohmann::json clip_to_json(const Clip& clip);

/// Rebuilds a clip through the edit operations, so every invariant is
/// checked. Ids are reassigned in note order; a selection given in terms of
/// the incoming ids is carried over. Throws EditError.
Clip clip_from_json(const nlohmann::json& j);

/// Applies one UI edit request to `clip`:
///   {"op":"add","pitch","start_ticks","duration_ticks"[,"velocity"]}
///   {"op":"select","id"[,"extend"]}   {"op":"deselect"}
///   {"op":"move","id","delta_ticks","delta_pitch"}
///   {"op":"resize","id"[,"start_ticks"][,"end_ticks"]}
///   {"op":"remove","id"}   {"op":"clear"}
/// Throws EditError for a malformed request or a rejected edit.
Clip apply_edit(const Clip& clip, const nlohmann::json& request);

}  // namespace bendaid::sequencer
