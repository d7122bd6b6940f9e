#include "bendaid/session/pitch_map.hpp"

#include <algorithm>
#include <cmath>

namespace bendaid::session {

void PitchMapConfig::validate() const {
    if (!std::isfinite(angle_min_deg) || !std::isfinite(angle_max_deg) || !(angle_max_deg > angle_min_deg)) {
        throw SessionError("pitch map needs angle_max_deg > angle_min_deg");
    }
    if (!std::isfinite(cents_at_max) || !(cents_at_max > 0.0)) {
        throw SessionError("pitch map needs cents_at_max > 0");
    }
}

double map_angle_to_cents(const PitchMapConfig& config, double angle_deg) {
    double u = (angle_deg - config.angle_min_deg) / (config.angle_max_deg - config.angle_min_deg);
    if (config.clamp) {
        u = std::clamp(u, 0.0, 1.0);
    }
    return u * config.cents_at_max;
}

}  // namespace bendaid::session
