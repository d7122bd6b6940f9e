#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bendaid/sequencer/clip.hpp"

namespace bendaid::sequencer {

class MidiError : public std::runtime_error {
public:
    MidiError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Reads SMF format 0 or 1. All tracks and channels merge into one clip.
/// The first tempo and time-signature meta events win; pitch-wheel events are
/// kept on the clip. Errors carry the byte offset of the offending data.
Clip load_midi(std::span<const std::uint8_t> bytes);

/// Writes a format-0 file with running status. load_midi(save_midi(c))
/// reproduces c's notes, tempo, meter and pitch bends.
std::vector<std::uint8_t> save_midi(const Clip& clip);

}  // namespace bendaid::sequencer
