#include "bendaid/bridge/telemetry_hub.hpp"

#include <algorithm>
#include <stdexcept>

namespace bendaid::bridge {

TelemetrySubscription::TelemetrySubscription(std::uint64_t id, std::size_t capacity)
    : id_(id), capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("subscription capacity must be >= 1");
}

bool TelemetrySubscription::push(const sim::KnobSample& sample) {
    bool kept_all = true;
    {
        std::lock_guard lock(mutex_);
        if (closed_) return true;
        if (queue_.size() == capacity_) {
            queue_.pop_front();
            ++dropped_;
            kept_all = false;
        }
        queue_.push_back(sample);
    }
    ready_.notify_one();
    return kept_all;
}

std::optional<sim::KnobSample> TelemetrySubscription::pop(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mutex_);
    if (!ready_.wait_for(lock, timeout, [&] { return closed_ || !queue_.empty(); })) return {};
    if (queue_.empty()) return {};
    auto sample = queue_.front();
    queue_.pop_front();
    ++delivered_;
    return sample;
}

std::vector<sim::KnobSample> TelemetrySubscription::drain() {
    std::lock_guard lock(mutex_);
    std::vector<sim::KnobSample> out(queue_.begin(), queue_.end());
    delivered_ += out.size();
    queue_.clear();
    return out;
}

void TelemetrySubscription::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    ready_.notify_all();
}

bool TelemetrySubscription::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

SubscriberStats TelemetrySubscription::stats() const {
    std::lock_guard lock(mutex_);
    return {id_, delivered_, dropped_, queue_.size()};
}

TelemetryHub::TelemetryHub(std::size_t downsample, std::size_t queue_capacity)
    : downsample_(downsample), capacity_(queue_capacity) {
    if (downsample_ == 0) throw std::invalid_argument("telemetry_downsample must be >= 1");
    if (capacity_ == 0) throw std::invalid_argument("client queue capacity must be >= 1");
}

std::shared_ptr<TelemetrySubscription> TelemetryHub::subscribe() {
    std::lock_guard lock(mutex_);
    auto sub = std::make_shared<TelemetrySubscription>(next_id_++, capacity_);
    subs_.push_back(sub);
    return sub;
}

void TelemetryHub::unsubscribe(std::uint64_t id) {
    std::shared_ptr<TelemetrySubscription> gone;
    {
        std::lock_guard lock(mutex_);
        auto it = std::find_if(subs_.begin(), subs_.end(), [&](const auto& s) { return s->id() == id; });
        if (it == subs_.end()) return;
        gone = *it;
        subs_.erase(it);
    }
    gone->close();
}

void TelemetryHub::publish(const sim::KnobSample& sample) {
    std::lock_guard lock(mutex_);
    if (published_++ % downsample_ != 0) return;
    ++forwarded_;
    for (const auto& sub : subs_) sub->push(sample);
}

std::vector<SubscriberStats> TelemetryHub::stats() const {
    std::lock_guard lock(mutex_);
    std::vector<SubscriberStats> out;
    out.reserve(subs_.size());
    for (const auto& sub : subs_) out.push_back(sub->stats());
    return out;
}

std::uint64_t TelemetryHub::published() const {
    std::lock_guard lock(mutex_);
    return published_;
}

std::uint64_t TelemetryHub::forwarded() const {
    std::lock_guard lock(mutex_);
    return forwarded_;
}

}  // namespace bendaid::bridge
