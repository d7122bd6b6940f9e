#include "bendaid/bridge/bridge.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "bendaid/protocol/codec.hpp"
#include "bendaid/sequencer/clip_json.hpp"
#include "bendaid/sequencer/midi_file.hpp"
#include "bendaid/session/contour_csv.hpp"
#include "bendaid/session/reference.hpp"

namespace bendaid::bridge {

namespace {

using Kind = BridgeError::Kind;
constexpr std::size_t kTimingWindow = 20000;
constexpr auto kCallTimeout = std::chrono::seconds(5);

bool valid_recording_id(std::string_view id) {
    return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '-' || c == '_';
    });
}

double percentile(std::vector<float> v, double q) {
    if (v.empty()) return 0.0;
    const auto k = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

std::uint64_t scan_next_recording(const std::filesystem::path& dir) {
    std::uint64_t next = 1;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        const auto stem = entry.path().stem().string();
        if (entry.path().extension() != ".csv" || !stem.starts_with("rec-")) continue;
        try {
            next = std::max<std::uint64_t>(next, std::stoull(stem.substr(4)) + 1);
        } catch (const std::exception&) {
        }
    }
    return next;
}

}  // namespace

std::string_view error_code(BridgeError::Kind kind) noexcept {
    switch (kind) {
        case Kind::NotConnected: return "not_connected";
        case Kind::DeviceOpen: return "device_open";
        case Kind::UnknownMode: return "unknown_mode";
        case Kind::InvalidParam: return "invalid_param";
        case Kind::RecordingActive: return "recording_active";
        case Kind::NoActiveRecording: return "no_active_recording";
        case Kind::NotFound: return "not_found";
        case Kind::InvalidRequest: return "invalid_request";
        case Kind::Unsupported: return "unsupported";
        case Kind::Timeout: return "timeout";
    }
    return "error";
}

void BridgeConfig::validate() const {
    if (telemetry_downsample < 1) throw std::invalid_argument("telemetry_downsample must be >= 1");
    if (client_queue_capacity < 1) throw std::invalid_argument("client_queue_capacity must be >= 1");
    rotor.validate();
    haptic.validate();
    pitch_map.validate();
    if (gesture) gesture->validate();
}

Bridge::Bridge(BridgeConfig config)
    : config_((config.validate(), std::move(config))),
      hub_(config_.telemetry_downsample, config_.client_queue_capacity),
      params_(config_.haptic),
      next_recording_(scan_next_recording(config_.record_dir)),
      clip_(sequencer::make_reference_clip()) {
    work_us_.reserve(kTimingWindow);
    lateness_us_.reserve(kTimingWindow);
}

Bridge::~Bridge() { disconnect(); }

template <class F>
auto Bridge::call(F&& fn) {
    using R = std::invoke_result_t<F&>;
    auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(fn));
    auto result = task->get_future();
    {
        std::lock_guard lock(queue_mutex_);
        queue_.emplace_back([task] { (*task)(); });
    }
    queue_cv_.notify_one();
    if (result.wait_for(kCallTimeout) != std::future_status::ready) {
        throw BridgeError(Kind::Timeout, "device loop did not answer in time");
    }
    return result.get();
}

void Bridge::require_connected() const {
    std::lock_guard lock(state_mutex_);
    if (!state_.connected) throw BridgeError(Kind::NotConnected, "not connected");
}

SessionState Bridge::connect() {
    std::unique_lock life(lifecycle_);
    if (link_) return state();

    SimOptions options{config_.rotor, config_.haptic, config_.gesture};
    options.haptic.mode = haptic::Mode::Smooth;
    try {
        link_ = open_device(config_.device, options);
    } catch (const DeviceOpenError& e) {
        throw BridgeError(Kind::DeviceOpen, e.what());
    }
    params_ = options.haptic;
    decoder_ = {};
    {
        std::lock_guard lock(state_mutex_);
        state_ = SessionState{};
        state_.connected = true;
        state_.mode = haptic::Mode::Smooth;
        state_.device = link_->describe();
    }
    link_->write(protocol::encode_command(protocol::ModeCommand{haptic::Mode::Smooth}));
    drain_link();
    {
        std::lock_guard lock(queue_mutex_);
        stop_ = false;
    }
    owner_ = std::thread([this] { run_owner(); });
    spdlog::info("connected to {}", link_->describe());
    return state();
}

void Bridge::disconnect() {
    std::unique_lock life(lifecycle_);
    if (!link_) return;
    {
        std::lock_guard lock(queue_mutex_);
        stop_ = true;
    }
    queue_cv_.notify_all();
    owner_.join();
    if (recorder_) finish_recording();
    link_.reset();
    std::lock_guard lock(state_mutex_);
    state_.connected = false;
    state_.mode.reset();
    spdlog::info("disconnected");
}

SessionState Bridge::state() const {
    std::lock_guard lock(state_mutex_);
    return state_;
}

ModeAck Bridge::ack(haptic::Mode mode) const {
    std::lock_guard lock(state_mutex_);
    ModeAck a{mode, 0, 0};
    if (state_.last_sample) {
        a.t_ms = state_.last_sample->t_ms;
        a.seq = state_.last_sample->seq;
    }
    return a;
}

ModeAck Bridge::set_mode(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    const auto mode = haptic::parse_mode_name(upper);
    if (!mode) throw BridgeError(Kind::UnknownMode, "unknown mode '" + std::string(name) + "'");
    std::shared_lock life(lifecycle_);
    require_connected();
    return call([this, m = *mode] {
        link_->write(protocol::encode_command(protocol::ModeCommand{m}));
        drain_link();
        params_.mode = m;
        return ack(m);
    });
}

void Bridge::set_param(std::string_view key, double value) {
    if (!haptic::is_param_key(key)) {
        throw BridgeError(Kind::InvalidParam, "unknown parameter '" + std::string(key) + "'");
    }
    std::shared_lock life(lifecycle_);
    require_connected();
    call([this, key = std::string(key), value] {
        try {
            params_ = haptic::with_param(params_, key, value);
        } catch (const haptic::ConfigError& e) {
            throw BridgeError(Kind::InvalidParam, e.what());
        }
        link_->write(protocol::encode_command(protocol::ParamCommand{key, value}));
        drain_link();
    });
}

ModeAck Bridge::zero() {
    std::shared_lock life(lifecycle_);
    require_connected();
    return call([this] {
        link_->write(protocol::encode_command(protocol::ZeroCommand{}));
        drain_link();
        return ack(params_.mode);
    });
}

void Bridge::set_user_torque(double torque) {
    if (!std::isfinite(torque)) throw BridgeError(Kind::InvalidRequest, "torque must be finite");
    std::shared_lock life(lifecycle_);
    require_connected();
    call([this, torque] {
        auto* sim = dynamic_cast<SimulatedLink*>(link_.get());
        if (sim == nullptr) throw BridgeError(Kind::Unsupported, "user torque needs the simulator");
        sim->set_user_torque(torque);
    });
}

void Bridge::step(std::uint64_t ticks) {
    if (config_.pacing != Pacing::Manual) {
        throw BridgeError(Kind::Unsupported, "step() needs manual pacing");
    }
    std::shared_lock life(lifecycle_);
    require_connected();
    call([this, ticks] {
        using clock = std::chrono::steady_clock;
        for (std::uint64_t i = 0; i < ticks; ++i) {
            const auto start = clock::now();
            tick_once();
            const std::chrono::duration<double, std::micro> work = clock::now() - start;
            record_timing(work.count(), 0.0);
        }
    });
}

void Bridge::run_owner() {
    using clock = std::chrono::steady_clock;
    const auto period = std::chrono::duration_cast<clock::duration>(
        std::chrono::duration<double>(config_.rotor.dt()));
    auto next = clock::now();
    std::deque<std::function<void()>> batch;
    for (;;) {
        {
            std::unique_lock lock(queue_mutex_);
            if (config_.pacing == Pacing::Manual) {
                queue_cv_.wait(lock, [&] { return stop_ || !queue_.empty(); });
            }
            if (stop_) break;
            batch.swap(queue_);
        }
        for (auto& fn : batch) fn();
        batch.clear();
        if (config_.pacing == Pacing::Manual) continue;

        const auto start = clock::now();
        const std::chrono::duration<double, std::micro> late = start - next;
        tick_once();
        const std::chrono::duration<double, std::micro> work = clock::now() - start;
        record_timing(work.count(), std::max(0.0, late.count()));

        next += period;
        const auto now = clock::now();
        if (now - next > 100 * period) next = now;  // resync after a long stall
        std::this_thread::sleep_until(next);
    }
}

void Bridge::tick_once() {
    link_->advance();
    drain_link();
}

void Bridge::drain_link() {
    const std::string bytes = link_->read_available();
    if (bytes.empty()) return;
    frames_.clear();
    decoder_.feed(bytes, frames_);
    for (const auto& frame : frames_) {
        if (const auto* t = std::get_if<protocol::TelemetryFrame>(&frame)) on_sample(t->sample);
    }
    std::lock_guard lock(state_mutex_);
    state_.frames_ok = decoder_.stats().frames_ok;
    state_.frames_dropped = decoder_.stats().frames_dropped;
}

void Bridge::on_sample(const sim::KnobSample& sample) {
    {
        std::lock_guard lock(state_mutex_);
        state_.last_sample = sample;
        state_.mode = sample.mode;
    }
    hub_.publish(sample);
    if (!recorder_) return;
    recorder_->push(sample);
    if (recording_left_ && --*recording_left_ == 0) finish_recording();
}

std::string Bridge::start_recording(std::optional<std::uint64_t> duration_ms) {
    if (duration_ms && *duration_ms == 0) {
        throw BridgeError(Kind::InvalidRequest, "duration_ms must be positive");
    }
    std::shared_lock life(lifecycle_);
    require_connected();
    return call([this, duration_ms] {
        std::lock_guard lock(state_mutex_);
        if (recorder_) {
            throw BridgeError(Kind::RecordingActive,
                              "recording " + *state_.active_recording + " is already active");
        }
        char id[32];
        std::snprintf(id, sizeof id, "rec-%04llu",
                      static_cast<unsigned long long>(next_recording_++));
        recorder_.emplace(config_.pitch_map);
        recording_left_.reset();
        if (duration_ms) {
            recording_left_ = std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(std::llround(static_cast<double>(*duration_ms) *
                                                           config_.rotor.tick_rate_hz / 1000.0)));
        }
        state_.active_recording = id;
        return std::string(id);
    });
}

RecordingInfo Bridge::stop_recording() {
    std::shared_lock life(lifecycle_);
    require_connected();
    return call([this] {
        if (!recorder_) throw BridgeError(Kind::NoActiveRecording, "no active recording");
        return finish_recording();
    });
}

RecordingInfo Bridge::finish_recording() {
    RecordingInfo info;
    const auto contour = recorder_->take();
    recorder_.reset();
    recording_left_.reset();
    const std::string csv = session::export_csv(contour);
    info.rows = contour.samples.size();
    {
        std::lock_guard lock(state_mutex_);
        info.id = state_.active_recording.value_or("");
        state_.active_recording.reset();
        recordings_[info.id] = csv;
    }
    std::error_code ec;
    std::filesystem::create_directories(config_.record_dir, ec);
    const auto path = config_.record_dir / (info.id + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (out && out.write(csv.data(), static_cast<std::streamsize>(csv.size()))) {
        info.path = path;
    } else {
        spdlog::warn("could not write {}; keeping recording in memory", path.string());
    }
    spdlog::info("recording {} saved, {} rows", info.id, info.rows);
    return info;
}

std::vector<std::string> Bridge::list_recordings() const {
    std::set<std::string> ids;
    {
        std::lock_guard lock(state_mutex_);
        for (const auto& [id, csv] : recordings_) ids.insert(id);
    }
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(config_.record_dir, ec)) {
        const auto stem = entry.path().stem().string();
        if (entry.path().extension() == ".csv" && valid_recording_id(stem)) ids.insert(stem);
    }
    return {ids.begin(), ids.end()};
}

std::optional<std::string> Bridge::recording_csv(std::string_view id) const {
    if (!valid_recording_id(id)) return std::nullopt;
    {
        std::lock_guard lock(state_mutex_);
        if (auto it = recordings_.find(id); it != recordings_.end()) return it->second;
    }
    std::ifstream in(config_.record_dir / (std::string(id) + ".csv"), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void Bridge::record_timing(double work_us, double lateness_us) {
    std::lock_guard lock(timing_mutex_);
    ++ticks_;
    if (lateness_us > config_.rotor.dt() * 1e6) ++overruns_;
    if (work_us_.size() < kTimingWindow) {
        work_us_.push_back(static_cast<float>(work_us));
        lateness_us_.push_back(static_cast<float>(lateness_us));
    } else {
        work_us_[timing_pos_] = static_cast<float>(work_us);
        lateness_us_[timing_pos_] = static_cast<float>(lateness_us);
        timing_pos_ = (timing_pos_ + 1) % kTimingWindow;
    }
}

LoopStats Bridge::loop_stats() const {
    std::vector<float> work;
    std::vector<float> late;
    LoopStats s;
    {
        std::lock_guard lock(timing_mutex_);
        work = work_us_;
        late = lateness_us_;
        s.ticks = ticks_;
        s.overruns = overruns_;
    }
    s.window = work.size();
    s.period_us = config_.rotor.dt() * 1e6;
    if (!work.empty()) {
        s.work_max_us = *std::max_element(work.begin(), work.end());
        s.lateness_max_us = *std::max_element(late.begin(), late.end());
    }
    s.work_p50_us = percentile(work, 0.50);
    s.work_p99_us = percentile(work, 0.99);
    s.lateness_p50_us = percentile(late, 0.50);
    s.lateness_p99_us = percentile(std::move(late), 0.99);
    return s;
}

void Bridge::reset_loop_stats() {
    std::lock_guard lock(timing_mutex_);
    work_us_.clear();
    lateness_us_.clear();
    timing_pos_ = 0;
    ticks_ = 0;
    overruns_ = 0;
}

nlohmann::json Bridge::clip_json() const {
    std::lock_guard lock(clip_mutex_);
    return sequencer::clip_to_json(clip_);
}

sequencer::Clip Bridge::clip() const {
    std::lock_guard lock(clip_mutex_);
    return clip_;
}

nlohmann::json Bridge::set_clip(const nlohmann::json& clip) {
    auto next = sequencer::clip_from_json(clip);
    std::lock_guard lock(clip_mutex_);
    clip_ = std::move(next);
    return sequencer::clip_to_json(clip_);
}

nlohmann::json Bridge::edit_clip(const nlohmann::json& request) {
    std::lock_guard lock(clip_mutex_);
    clip_ = sequencer::apply_edit(clip_, request);
    return sequencer::clip_to_json(clip_);
}

nlohmann::json Bridge::load_midi(std::span<const std::uint8_t> bytes) {
    auto next = sequencer::load_midi(bytes);
    std::lock_guard lock(clip_mutex_);
    clip_ = std::move(next);
    return sequencer::clip_to_json(clip_);
}

std::vector<std::uint8_t> Bridge::clip_midi() const {
    std::lock_guard lock(clip_mutex_);
    return sequencer::save_midi(clip_);
}

std::string Bridge::reference_csv() const {
    std::lock_guard lock(clip_mutex_);
    if (clip_.notes().empty()) return session::export_csv({});
    return session::export_csv(session::reference_contour({}, clip_));
}

nlohmann::json sample_to_json(const sim::KnobSample& s) {
    return {{"seq", s.seq},
            {"t_ms", s.t_ms},
            {"angle", s.angle_deg},
            {"velocity", s.velocity_dps},
            {"torque", s.torque},
            {"mode", haptic::mode_name(s.mode)}};
}

nlohmann::json state_to_json(const SessionState& st) {
    nlohmann::json j = {{"connected", st.connected},
                        {"device", st.device},
                        {"frames_ok", st.frames_ok},
                        {"frames_dropped", st.frames_dropped}};
    j["mode"] = st.mode ? nlohmann::json(haptic::mode_name(*st.mode)) : nlohmann::json(nullptr);
    j["active_recording"] =
        st.active_recording ? nlohmann::json(*st.active_recording) : nlohmann::json(nullptr);
    j["last_sample"] = st.last_sample ? sample_to_json(*st.last_sample) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json loop_stats_to_json(const LoopStats& s) {
    return {{"ticks", s.ticks},
            {"overruns", s.overruns},
            {"window", s.window},
            {"period_us", s.period_us},
            {"work_p50_us", s.work_p50_us},
            {"work_p99_us", s.work_p99_us},
            {"work_max_us", s.work_max_us},
            {"lateness_p50_us", s.lateness_p50_us},
            {"lateness_p99_us", s.lateness_p99_us},
            {"lateness_max_us", s.lateness_max_us}};
}

}  // namespace bendaid::bridge
