#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace bendaid::haptic {

enum class Mode : std::uint8_t { Smooth, Detent, Spring, Free, Vibrato };

inline constexpr std::array<Mode, 5> kAllModes{Mode::Smooth, Mode::Detent, Mode::Spring,
                                               Mode::Free, Mode::Vibrato};

// Upper-case wire name, e.g. "SPRING".
std::string_view mode_name(Mode mode) noexcept;

// Exact match against the closed set of wire names. Anything else
// (including out-of-scope modes like MAGNET) yields nullopt.
std::optional<Mode> parse_mode_name(std::string_view name) noexcept;

}  // namespace bendaid::haptic
