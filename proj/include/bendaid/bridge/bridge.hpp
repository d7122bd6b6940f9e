#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "bendaid/bridge/device_link.hpp"
#include "bendaid/bridge/telemetry_hub.hpp"
#include "bendaid/protocol/decoder.hpp"
#include "bendaid/sequencer/clip.hpp"
#include "bendaid/session/contour.hpp"
#include "bendaid/session/pitch_map.hpp"

namespace bendaid::bridge {

enum class Pacing {
    Realtime,  ///< owner thread ticks on the wall clock at the rotor tick rate
    Manual,    ///< ticks only advance through step(); for deterministic tests
};

struct BridgeConfig {
    std::string host = "127.0.0.1";
    std::uint16_t port = 8080;
    std::string device = "sim";
    std::size_t telemetry_downsample = 10;
    std::size_t client_queue_capacity = 256;
    std::filesystem::path record_dir = "recordings";
    Pacing pacing = Pacing::Realtime;
    sim::RotorParams rotor{};
    haptic::HapticModeConfig haptic{};  ///< mode is forced to SMOOTH on connect
    session::PitchMapConfig pitch_map{};
    std::optional<sim::GestureProfile> gesture;

    void validate() const;
};

class BridgeError : public std::runtime_error {
public:
    enum class Kind {
        NotConnected,
        DeviceOpen,
        UnknownMode,
        InvalidParam,
        RecordingActive,
        NoActiveRecording,
        NotFound,
        InvalidRequest,
        Unsupported,
        Timeout,
    };

    BridgeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::string_view error_code(BridgeError::Kind kind) noexcept;

struct SessionState {
    bool connected = false;
    std::optional<haptic::Mode> mode;
    std::optional<std::string> active_recording;
    std::string device;
    std::optional<sim::KnobSample> last_sample;
    std::uint64_t frames_ok = 0;
    std::uint64_t frames_dropped = 0;
};

struct ModeAck {
    haptic::Mode mode = haptic::Mode::Smooth;
    /// Device clock and sequence number of the newest frame seen once the
    /// command was written; for the simulator this is the reset frame.
    std::uint64_t t_ms = 0;
    std::uint64_t seq = 0;
};

struct RecordingInfo {
    std::string id;
    std::size_t rows = 0;
    std::filesystem::path path;  ///< empty if the file could not be written
};

/// Timing of the owner loop over the most recent window of ticks.
struct LoopStats {
    std::uint64_t ticks = 0;
    std::uint64_t overruns = 0;  ///< ticks that started more than one period late
    std::size_t window = 0;
    double period_us = 0.0;
    double work_p50_us = 0.0;
    double work_p99_us = 0.0;
    double work_max_us = 0.0;
    double lateness_p50_us = 0.0;
    double lateness_p99_us = 0.0;
    double lateness_max_us = 0.0;
};

/// The backend service. One owner thread holds the device link and runs
/// the tick loop; every control call is marshalled onto it through a
/// command queue and waits for the result. Telemetry leaves through the hub.
class Bridge {
public:
    explicit Bridge(BridgeConfig config);
    ~Bridge();
    Bridge(const Bridge&) = delete;
    Bridge& operator=(const Bridge&) = delete;

    const BridgeConfig& config() const noexcept { return config_; }

    /// Opens the device and starts the owner loop in SMOOTH. Calling it
    /// while connected returns the current state unchanged.
    SessionState connect();
    void disconnect();
    SessionState state() const;

    /// Case-insensitive mode name.
    ModeAck set_mode(std::string_view name);
    void set_param(std::string_view key, double value);
    ModeAck zero();
    /// Simulator only: constant hand torque added to the gesture.
    void set_user_torque(double torque);
    /// Manual pacing only: runs `ticks` device ticks before returning.
    void step(std::uint64_t ticks);

    /// `duration_ms` stops the recording automatically after that much
    /// device time.
    std::string start_recording(std::optional<std::uint64_t> duration_ms = {});
    RecordingInfo stop_recording();
    std::vector<std::string> list_recordings() const;
    std::optional<std::string> recording_csv(std::string_view id) const;

    std::shared_ptr<TelemetrySubscription> subscribe() { return hub_.subscribe(); }
    void unsubscribe(std::uint64_t id) { hub_.unsubscribe(id); }
    std::vector<SubscriberStats> subscriber_stats() const { return hub_.stats(); }
    const TelemetryHub& hub() const noexcept { return hub_; }

    LoopStats loop_stats() const;
    void reset_loop_stats();

    nlohmann::json clip_json() const;
    sequencer::Clip clip() const;
    /// Each replaces the working clip on success and leaves it untouched on
    /// EditError / MidiError.
    nlohmann::json set_clip(const nlohmann::json& clip);
    nlohmann::json edit_clip(const nlohmann::json& request);
    nlohmann::json load_midi(std::span<const std::uint8_t> bytes);
    std::vector<std::uint8_t> clip_midi() const;
    /// Reference vibrato contour over the working clip.
    std::string reference_csv() const;

private:
    template <class F>
    auto call(F&& fn);
    void require_connected() const;
    void run_owner();
    void tick_once();
    void drain_link();
    void on_sample(const sim::KnobSample& sample);
    RecordingInfo finish_recording();
    void record_timing(double work_us, double lateness_us);
    ModeAck ack(haptic::Mode mode) const;

    BridgeConfig config_;
    TelemetryHub hub_;

    // Connect/disconnect take this exclusively; control calls share it so
    // the owner thread cannot vanish while they wait on it.
    mutable std::shared_mutex lifecycle_;
    std::thread owner_;
    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::deque<std::function<void()>> queue_;
    bool stop_ = false;

    // Owner-thread state.
    std::unique_ptr<DeviceLink> link_;
    protocol::StreamDecoder decoder_;
    std::vector<protocol::Frame> frames_;
    std::optional<session::ContourRecorder> recorder_;
    std::optional<std::uint64_t> recording_left_;
    haptic::HapticModeConfig params_;

    mutable std::mutex state_mutex_;
    SessionState state_;
    std::map<std::string, std::string, std::less<>> recordings_;
    std::uint64_t next_recording_ = 1;

    mutable std::mutex timing_mutex_;
    std::vector<float> work_us_;
    std::vector<float> lateness_us_;
    std::size_t timing_pos_ = 0;
    std::uint64_t ticks_ = 0;
    std::uint64_t overruns_ = 0;

    mutable std::mutex clip_mutex_;
    sequencer::Clip clip_;
};

nlohmann::json sample_to_json(const sim::KnobSample& sample);
nlohmann::json state_to_json(const SessionState& state);
nlohmann::json loop_stats_to_json(const LoopStats& stats);

}  // namespace bendaid::bridge
