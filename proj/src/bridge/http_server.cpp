#include "bendaid/bridge/http_server.hpp"

#include <sys/socket.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include "bendaid/haptic/config.hpp"
#include "bendaid/sequencer/midi_file.hpp"

namespace bendaid::bridge {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

std::string_view edit_kind_code(sequencer::EditError::Kind kind) {
    using K = sequencer::EditError::Kind;
    switch (kind) {
        case K::PitchRange: return "pitch_range";
        case K::Overlap: return "overlap";
        case K::MinDuration: return "min_duration";
        case K::NegativeStart: return "negative_start";
        case K::Velocity: return "velocity";
        case K::UnknownId: return "unknown_id";
        case K::Format: return "format";
    }
    return "edit";
}

unsigned status_for(BridgeError::Kind kind) {
    using K = BridgeError::Kind;
    switch (kind) {
        case K::NotConnected:
        case K::RecordingActive:
        case K::NoActiveRecording:
        case K::Unsupported: return 409;
        case K::DeviceOpen: return 503;
        case K::UnknownMode:
        case K::InvalidParam: return 422;
        case K::NotFound: return 404;
        case K::InvalidRequest: return 400;
        case K::Timeout: return 504;
    }
    return 500;
}

HttpResponse json_response(const json& j, unsigned status = 200) {
    return {status, "application/json", j.dump(), {}};
}

HttpResponse error_response(unsigned status, std::string_view code, std::string_view message,
                            json extra = json::object()) {
    extra["error"] = code;
    extra["message"] = message;
    return json_response(extra, status);
}

json parse_body(std::string_view body) {
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return json::object();
    auto j = json::parse(body);
    if (!j.is_object()) throw BridgeError(BridgeError::Kind::InvalidRequest, "body must be a JSON object");
    return j;
}

template <class T>
T required(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw BridgeError(BridgeError::Kind::InvalidRequest, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw BridgeError(BridgeError::Kind::InvalidRequest, std::string("bad type for '") + key + "'");
    }
}

json ack_json(const ModeAck& a) {
    return {{"mode", haptic::mode_name(a.mode)}, {"t_ms", a.t_ms}, {"seq", a.seq}};
}

json stats_json(const Bridge& bridge) {
    json clients = json::array();
    for (const auto& s : bridge.subscriber_stats()) {
        clients.push_back(
            {{"id", s.id}, {"delivered", s.delivered}, {"dropped", s.dropped}, {"queued", s.queued}});
    }
    return {{"loop", loop_stats_to_json(bridge.loop_stats())},
            {"clients", clients},
            {"published", bridge.hub().published()},
            {"forwarded", bridge.hub().forwarded()},
            {"downsample", bridge.hub().downsample()}};
}

HttpResponse route(Bridge& bridge, std::string_view method, std::string_view path,
                   std::string_view body) {
    const bool get = method == "GET";
    const bool post = method == "POST";
    auto method_not_allowed = [] {
        return error_response(405, "method_not_allowed", "method not allowed");
    };

    if (path == "/api/modes") {
        if (!get) return method_not_allowed();
        json modes = json::array();
        for (auto m : haptic::kAllModes) modes.push_back(haptic::mode_name(m));
        json params = json::array();
        for (auto k : haptic::param_keys()) params.push_back(k);
        return json_response({{"modes", modes}, {"params", params}});
    }
    if (path == "/api/state") {
        if (!get) return method_not_allowed();
        return json_response(state_to_json(bridge.state()));
    }
    if (path == "/api/stats") {
        if (!get) return method_not_allowed();
        return json_response(stats_json(bridge));
    }
    if (path == "/api/connect") {
        if (!post) return method_not_allowed();
        return json_response(state_to_json(bridge.connect()));
    }
    if (path == "/api/disconnect") {
        if (!post) return method_not_allowed();
        bridge.disconnect();
        return json_response(state_to_json(bridge.state()));
    }
    if (path == "/api/mode") {
        if (!post) return method_not_allowed();
        const auto req = parse_body(body);
        return json_response(ack_json(bridge.set_mode(required<std::string>(req, "name"))));
    }
    if (path == "/api/param") {
        if (!post) return method_not_allowed();
        const auto req = parse_body(body);
        const auto key = required<std::string>(req, "key");
        const auto value = required<double>(req, "value");
        bridge.set_param(key, value);
        return json_response({{"key", key}, {"value", value}});
    }
    if (path == "/api/zero") {
        if (!post) return method_not_allowed();
        return json_response(ack_json(bridge.zero()));
    }
    if (path == "/api/sim/torque") {
        if (!post) return method_not_allowed();
        const auto torque = required<double>(parse_body(body), "torque");
        bridge.set_user_torque(torque);
        return json_response({{"torque", torque}});
    }
    if (path == "/api/sim/step") {
        if (!post) return method_not_allowed();
        const auto ticks = required<std::uint64_t>(parse_body(body), "ticks");
        bridge.step(ticks);
        return json_response(state_to_json(bridge.state()));
    }
    if (path == "/api/record/start") {
        if (!post) return method_not_allowed();
        const auto req = parse_body(body);
        std::optional<std::uint64_t> duration;
        if (req.contains("duration_ms")) duration = required<std::uint64_t>(req, "duration_ms");
        return json_response({{"id", bridge.start_recording(duration)}});
    }
    if (path == "/api/record/stop") {
        if (!post) return method_not_allowed();
        const auto info = bridge.stop_recording();
        return json_response({{"id", info.id}, {"rows", info.rows}});
    }
    if (path == "/api/record") {
        if (!get) return method_not_allowed();
        const auto st = bridge.state();
        return json_response(
            {{"recordings", bridge.list_recordings()},
             {"active", st.active_recording ? json(*st.active_recording) : json(nullptr)}});
    }
    if (path.starts_with("/api/record/") && path.ends_with(".csv")) {
        if (!get) return method_not_allowed();
        const auto id = path.substr(12, path.size() - 12 - 4);
        auto csv = bridge.recording_csv(id);
        if (!csv) return error_response(404, "not_found", "no recording '" + std::string(id) + "'");
        return {200, "text/csv", std::move(*csv), std::string(id) + ".csv"};
    }
    if (path == "/api/clip") {
        if (get) return json_response(bridge.clip_json());
        if (post) return json_response(bridge.set_clip(json::parse(body)));
        return method_not_allowed();
    }
    if (path == "/api/clip/edit") {
        if (!post) return method_not_allowed();
        return json_response(bridge.edit_clip(parse_body(body)));
    }
    if (path == "/api/clip.mid") {
        if (!get) return method_not_allowed();
        const auto bytes = bridge.clip_midi();
        return {200, "audio/midi", std::string(bytes.begin(), bytes.end()), "clip.mid"};
    }
    if (path == "/api/midi") {
        if (!post) return method_not_allowed();
        const auto* data = reinterpret_cast<const std::uint8_t*>(body.data());
        return json_response(bridge.load_midi({data, body.size()}));
    }
    if (path == "/api/reference.csv") {
        if (!get) return method_not_allowed();
        return {200, "text/csv", bridge.reference_csv(), "reference.csv"};
    }
    return error_response(404, "not_found", "no route for " + std::string(path));
}

}  // namespace

HttpResponse handle_request(Bridge& bridge, std::string_view method, std::string_view target,
                            std::string_view body) {
    const auto path = target.substr(0, target.find('?'));
    if (method == "OPTIONS") return {204, "text/plain", {}, {}};
    try {
        return route(bridge, method, path, body);
    } catch (const BridgeError& e) {
        return error_response(status_for(e.kind()), error_code(e.kind()), e.what());
    } catch (const sequencer::EditError& e) {
        return error_response(422, "edit_rejected", e.what(), {{"kind", edit_kind_code(e.kind())}});
    } catch (const sequencer::MidiError& e) {
        return error_response(422, "midi_invalid", e.what(), {{"offset", e.offset()}});
    } catch (const json::exception& e) {
        return error_response(400, "bad_json", e.what());
    } catch (const std::exception& e) {
        spdlog::error("{} {}: {}", method, path, e.what());
        return error_response(500, "internal", e.what());
    }
}

struct HttpServer::Impl {
    struct Connection {
        explicit Connection(tcp::socket s) : socket(std::move(s)) {}
        tcp::socket socket;
        std::thread thread;
        std::atomic<bool> done{false};
    };

    net::io_context ioc;
    tcp::acceptor acceptor{ioc};
    std::thread accept_thread;
    std::atomic<bool> stopping{false};
    std::mutex mutex;
    std::list<Connection> connections;

    void reap() {
        std::lock_guard lock(mutex);
        for (auto it = connections.begin(); it != connections.end();) {
            if (it->done) {
                it->thread.join();
                beast::error_code ec;
                it->socket.close(ec);
                it = connections.erase(it);
            } else {
                ++it;
            }
        }
    }
};

namespace {

template <class Body>
void add_common_headers(http::response<Body>& res) {
    res.set(http::field::server, "bendaid-bridge");
    res.set(http::field::access_control_allow_origin, "*");
    res.set(http::field::access_control_allow_headers, "Content-Type");
    res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
}

void serve_websocket(Bridge& bridge, tcp::socket& socket, const http::request<http::string_body>& req,
                     const HttpServerOptions& options, const std::atomic<bool>& stopping) {
    beast::error_code ec;
    if (options.ws_send_buffer_bytes > 0) {
        socket.set_option(net::socket_base::send_buffer_size(options.ws_send_buffer_bytes), ec);
    }
    websocket::stream<tcp::socket&> ws(socket);
    ws.set_option(websocket::stream_base::decorator(
        [](websocket::response_type& res) { res.set(http::field::server, "bendaid-bridge"); }));
    ws.accept(req, ec);
    if (ec) return;
    ws.text(true);

    auto sub = bridge.subscribe();
    while (!stopping) {
        auto sample = sub->pop(std::chrono::milliseconds(100));
        if (!sample) {
            if (sub->closed()) break;
            continue;
        }
        const auto text = sample_to_json(*sample).dump();
        ws.write(net::buffer(text), ec);
        if (ec) break;
    }
    bridge.unsubscribe(sub->id());
}

void serve_connection(Bridge& bridge, tcp::socket& socket, const HttpServerOptions& options,
                      const std::atomic<bool>& stopping) {
    beast::flat_buffer buffer;
    beast::error_code ec;
    while (!stopping) {
        http::request_parser<http::string_body> parser;
        parser.body_limit(options.max_body_bytes);
        http::read(socket, buffer, parser, ec);
        if (ec == http::error::body_limit) {
            http::response<http::string_body> res{http::status::payload_too_large, 11};
            add_common_headers(res);
            res.keep_alive(false);
            res.prepare_payload();
            http::write(socket, res, ec);
            break;
        }
        if (ec) break;
        auto req = parser.release();

        if (websocket::is_upgrade(req)) {
            if (req.target() == "/ws/telemetry") {
                serve_websocket(bridge, socket, req, options, stopping);
                return;
            }
            http::response<http::string_body> res{http::status::not_found, req.version()};
            add_common_headers(res);
            res.keep_alive(false);
            res.prepare_payload();
            http::write(socket, res, ec);
            break;
        }

        const auto method = req.method_string();
        const auto target = req.target();
        const auto out = handle_request(bridge, {method.data(), method.size()},
                                        {target.data(), target.size()}, req.body());
        http::response<http::string_body> res{static_cast<http::status>(out.status), req.version()};
        add_common_headers(res);
        res.set(http::field::content_type, out.content_type);
        if (!out.filename.empty()) {
            res.set(http::field::content_disposition, "attachment; filename=\"" + out.filename + "\"");
        }
        res.body() = out.body;
        res.keep_alive(req.keep_alive());
        res.prepare_payload();
        http::write(socket, res, ec);
        if (ec || !res.keep_alive()) break;
    }
    socket.shutdown(tcp::socket::shutdown_send, ec);
}

}  // namespace

HttpServer::HttpServer(Bridge& bridge, HttpServerOptions options)
    : bridge_(bridge), options_(options), impl_(std::make_unique<Impl>()) {}

HttpServer::~HttpServer() { stop(); }

void HttpServer::start() {
    auto& impl = *impl_;
    const auto& cfg = bridge_.config();
    const tcp::endpoint endpoint(net::ip::make_address(cfg.host), cfg.port);
    impl.acceptor.open(endpoint.protocol());
    impl.acceptor.set_option(net::socket_base::reuse_address(true));
    impl.acceptor.bind(endpoint);
    impl.acceptor.listen();
    port_ = impl.acceptor.local_endpoint().port();
    impl.stopping = false;

    impl.accept_thread = std::thread([this, &impl] {
        while (!impl.stopping) {
            tcp::socket socket(impl.ioc);
            beast::error_code ec;
            impl.acceptor.accept(socket, ec);
            if (impl.stopping) break;
            if (ec) continue;
            impl.reap();
            std::lock_guard lock(impl.mutex);
            auto& conn = impl.connections.emplace_back(std::move(socket));
            conn.thread = std::thread([this, &impl, &conn] {
                try {
                    serve_connection(bridge_, conn.socket, options_, impl.stopping);
                } catch (const std::exception& e) {
                    spdlog::warn("connection error: {}", e.what());
                }
                conn.done = true;
            });
        }
    });
    spdlog::info("listening on {}:{}", cfg.host, port_);
}

void HttpServer::stop() {
    auto& impl = *impl_;
    if (!impl.accept_thread.joinable()) return;
    impl.stopping = true;
    // Unblocks the thread sitting in accept().
    ::shutdown(impl.acceptor.native_handle(), SHUT_RDWR);
    impl.accept_thread.join();
    beast::error_code ec;
    impl.acceptor.close(ec);

    std::lock_guard lock(impl.mutex);
    for (auto& conn : impl.connections) {
        ::shutdown(conn.socket.native_handle(), SHUT_RDWR);
    }
    for (auto& conn : impl.connections) {
        conn.thread.join();
        conn.socket.close(ec);
    }
    impl.connections.clear();
}

}  // namespace bendaid::bridge
