#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bendaid/protocol/frames.hpp"

namespace bendaid::protocol {

struct DecoderStats {
    std::uint64_t frames_ok = 0;
    std::uint64_t frames_dropped = 0;
};

/// Incremental line reassembler. Feed it arbitrary chunks; every complete
/// valid line yields exactly one frame no matter where the chunk boundaries
/// fall. Malformed or over-long lines are counted and skipped.
class StreamDecoder {
public:
    static constexpr std::size_t kBufferLimit = 4096;

    std::vector<Frame> feed(std::string_view chunk);
    /// Appends to `out` instead of allocating a fresh vector.
    void feed(std::string_view chunk, std::vector<Frame>& out);

    const DecoderStats& stats() const noexcept { return stats_; }
    std::size_t buffered() const noexcept { return pending_.size(); }

private:
    void finish_line(std::vector<Frame>& out);

    std::string pending_;
    bool discarding_ = false;
    DecoderStats stats_;
};

}  // namespace bendaid::protocol
