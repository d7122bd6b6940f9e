#pragma once

#include <stdexcept>

namespace bendaid::session {

class SessionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Linear knob-angle to pitch-bend map; angle_min maps to 0 cents and
/// angle_max to cents_at_max.
struct PitchMapConfig {
    double angle_min_deg = 0.0;
    double angle_max_deg = 90.0;
    double cents_at_max = 200.0;
    bool clamp = true;

    void validate() const;
};

double map_angle_to_cents(const PitchMapConfig& config, double angle_deg);

}  // namespace bendaid::session
