#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "bendaid/sim/knob_sample.hpp"

namespace bendaid::bridge {

struct SubscriberStats {
    std::uint64_t id = 0;
    std::uint64_t delivered = 0;  ///< popped by the consumer
    std::uint64_t dropped = 0;    ///< evicted because the queue was full
    std::size_t queued = 0;
};

/// Bounded single-consumer queue. The producer never waits: a push into a
/// full queue evicts the oldest sample and counts it.
class TelemetrySubscription {
public:
    TelemetrySubscription(std::uint64_t id, std::size_t capacity);

    /// Returns false when an older sample had to be evicted.
    bool push(const sim::KnobSample& sample);
    std::optional<sim::KnobSample> pop(std::chrono::milliseconds timeout);
    std::vector<sim::KnobSample> drain();
    void close();
    bool closed() const;

    std::uint64_t id() const noexcept { return id_; }
    SubscriberStats stats() const;

private:
    const std::uint64_t id_;
    const std::size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<sim::KnobSample> queue_;
    std::uint64_t delivered_ = 0;
    std::uint64_t dropped_ = 0;
    bool closed_ = false;
};

/// Fan-out publisher. Every `downsample`-th published sample (counted over
/// the whole stream, not per client) is copied into each subscription.
class TelemetryHub {
public:
    TelemetryHub(std::size_t downsample, std::size_t queue_capacity);

    std::shared_ptr<TelemetrySubscription> subscribe();
    void unsubscribe(std::uint64_t id);
    void publish(const sim::KnobSample& sample);

    std::vector<SubscriberStats> stats() const;
    std::uint64_t published() const;
    std::uint64_t forwarded() const;
    std::size_t downsample() const noexcept { return downsample_; }

private:
    const std::size_t downsample_;
    const std::size_t capacity_;
    mutable std::mutex mutex_;
    std::vector<std::shared_ptr<TelemetrySubscription>> subs_;
    std::uint64_t next_id_ = 1;
    std::uint64_t published_ = 0;
    std::uint64_t forwarded_ = 0;
};

}  // namespace bendaid::bridge
