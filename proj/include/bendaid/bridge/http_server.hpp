#pragma once

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "bendaid/bridge/bridge.hpp"

namespace bendaid::bridge {

struct HttpResponse {
    unsigned status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::string filename;  ///< sets Content-Disposition when non-empty
};

/// Routes one request against the bridge. Transport-free so the route table
/// can be tested without sockets.
HttpResponse handle_request(Bridge& bridge, std::string_view method, std::string_view target,
                            std::string_view body);

struct HttpServerOptions {
    /// SO_SNDBUF for WebSocket connections; 0 keeps the kernel default.
    int ws_send_buffer_bytes = 0;
    std::size_t max_body_bytes = 8u << 20;
};

/// Blocking Boost.Beast server: one accept thread, one thread per
/// connection. /ws/telemetry upgrades to a WebSocket that streams the hub.
class HttpServer {
public:
    HttpServer(Bridge& bridge, HttpServerOptions options = {});
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds config().host:config().port (port 0 picks a free one).
    void start();
    void stop();
    std::uint16_t port() const noexcept { return port_; }

private:
    struct Impl;
    Bridge& bridge_;
    HttpServerOptions options_;
    std::unique_ptr<Impl> impl_;
    std::uint16_t port_ = 0;
};

}  // namespace bendaid::bridge
