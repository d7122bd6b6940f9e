#include "bendaid/protocol/decoder.hpp"

#include "bendaid/protocol/codec.hpp"

namespace bendaid::protocol {

static_assert(kMaxLineBytes <= StreamDecoder::kBufferLimit);

std::vector<Frame> StreamDecoder::feed(std::string_view chunk) {
    std::vector<Frame> out;
    feed(chunk, out);
    return out;
}

void StreamDecoder::feed(std::string_view chunk, std::vector<Frame>& out) {
    while (!chunk.empty()) {
        const auto nl = chunk.find('\n');
        const auto piece = chunk.substr(0, nl);
        if (discarding_) {
            // Tail of an over-long line: swallow up to and including the newline.
            if (nl != std::string_view::npos) {
                discarding_ = false;
            }
        } else {
            pending_.append(piece);
            if (pending_.size() >= kMaxLineBytes) {
                // Cannot become valid any more. Drop what we have now so the
                // buffer stays bounded, and skip the rest of the line.
                ++stats_.frames_dropped;
                pending_.clear();
                discarding_ = nl == std::string_view::npos;
            } else if (nl != std::string_view::npos) {
                finish_line(out);
            }
        }
        if (nl == std::string_view::npos) {
            break;
        }
        chunk.remove_prefix(nl + 1);
    }
}

void StreamDecoder::finish_line(std::vector<Frame>& out) {
    if (pending_.empty() || pending_ == "\r") {
        // Blank lines are keep-alive noise, not frames.
        pending_.clear();
        return;
    }
    try {
        out.push_back(parse_line(pending_));
        ++stats_.frames_ok;
    } catch (const ProtocolError&) {
        ++stats_.frames_dropped;
    }
    pending_.clear();
}

}  // namespace bendaid::protocol
