#include "bendaid/haptic/mode.hpp"

namespace bendaid::haptic {

std::string_view mode_name(Mode mode) noexcept {
    switch (mode) {
    case Mode::Smooth:
        return "SMOOTH";
    case Mode::Detent:
        return "DETENT";
    case Mode::Spring:
        return "SPRING";
    case Mode::Free:
        return "FREE";
    case Mode::Vibrato:
        return "VIBRATO";
    }
    return "SMOOTH";
}

std::optional<Mode> parse_mode_name(std::string_view name) noexcept {
    for (Mode m : kAllModes) {
        if (mode_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

}  // namespace bendaid::haptic
