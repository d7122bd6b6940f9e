#include <doctest.h>

#include <filesystem>
#include <thread>

#include "bendaid/bridge/http_server.hpp"
#include "support/http_client.hpp"

using namespace bendaid;
using namespace bendaid::bridge;
namespace tc = testclient;

namespace {

struct LiveBridge {
    explicit LiveBridge(std::size_t downsample = 10, std::size_t queue = 64, int ws_sndbuf = 0)
        : bridge([&] {
              BridgeConfig c;
              c.port = 0;
              c.telemetry_downsample = downsample;
              c.client_queue_capacity = queue;
              c.record_dir = "bht_recordings";
              std::filesystem::remove_all(c.record_dir);
              return c;
          }()),
          server(bridge, HttpServerOptions{ws_sndbuf}) {
        server.start();
    }
    ~LiveBridge() {
        server.stop();
        bridge.disconnect();
    }
    std::uint16_t port() const { return server.port(); }

    Bridge bridge;
    HttpServer server;
};

}  // namespace

TEST_CASE("http control surface") {
    LiveBridge live;
    const auto port = live.port();
    CHECK(tc::get(port, "/api/modes").json()["modes"][2] == "SPRING");
    CHECK(tc::post(port, "/api/mode", R"({"name":"SPRING"})").status == 409);
    auto r = tc::post(port, "/api/connect");
    CHECK(r.status == 200);
    CHECK(r.json()["mode"] == "SMOOTH");
    CHECK(tc::post(port, "/api/connect").json()["connected"] == true);
    CHECK(tc::post(port, "/api/mode", R"({"name":"MAGNET"})").status == 422);
    r = tc::post(port, "/api/mode", R"({"name":"SPRING"})");
    CHECK(r.status == 200);
    CHECK(tc::get(port, "/api/state").json()["mode"] == "SPRING");
    CHECK(tc::post(port, "/api/record/stop").status == 409);
    CHECK(tc::get(port, "/api/record/unknown.csv").status == 404);
    r = tc::get(port, "/api/reference.csv");
    CHECK(r.content_type == "text/csv");
    CHECK(r.body.rfind("t_ms,cents\n0,0.0000\n", 0) == 0);
    CHECK(tc::post(port, "/api/sim/step", R"({"ticks":1})").status == 409);
}

TEST_CASE("websocket telemetry is ordered and downsampled") {
    LiveBridge live(10, 4096);
    const auto port = live.port();
    tc::post(port, "/api/connect");
    tc::TelemetrySocket ws(port);
    auto prev = ws.next();
    for (const char* key : {"seq", "t_ms", "angle", "velocity", "torque", "mode"}) CHECK(prev.contains(key));
    for (int i = 0; i < 100; ++i) {
        const auto f = ws.next();
        REQUIRE(f["seq"].get<std::uint64_t>() == prev["seq"].get<std::uint64_t>() + 10);
        prev = f;
    }

    const auto ack = tc::post(port, "/api/mode", R"({"name":"DETENT"})").json();
    const auto t_ack = ack["t_ms"].get<std::uint64_t>();
    for (;;) {
        const auto f = ws.next();
        if (f["mode"] == "DETENT") {
            CHECK(f["t_ms"].get<std::uint64_t>() - t_ack <= 50);
            break;
        }
        REQUIRE(f["t_ms"].get<std::uint64_t>() <= t_ack + 50);
    }
    ws.drop();
}

TEST_CASE("timed recording over http") {
    LiveBridge live;
    const auto port = live.port();
    tc::post(port, "/api/connect");
    const auto id = tc::post(port, "/api/record/start", R"({"duration_ms":300})").json()["id"].get<std::string>();
    CHECK(tc::post(port, "/api/record/start").status == 409);
    for (int i = 0; i < 200 && !tc::get(port, "/api/state").json()["active_recording"].is_null(); ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    const auto csv = tc::get(port, "/api/record/" + id + ".csv");
    CHECK(csv.status == 200);
    CHECK(std::count(csv.body.begin(), csv.body.end(), '\n') == 301);
    CHECK(tc::get(port, "/api/record").json()["recordings"][0] == id);
}

TEST_CASE("a stalled websocket client only loses its own frames") {
    LiveBridge live(1, 32, 4096);
    const auto port = live.port();
    tc::post(port, "/api/connect");
    tc::TelemetrySocket stalled(port, 4096);
    tc::TelemetrySocket healthy(port);
    std::this_thread::sleep_for(std::chrono::milliseconds(1500));
    const auto stats = tc::get(port, "/api/stats").json();
    REQUIRE(stats["clients"].size() == 2);
    std::uint64_t dropped_max = 0;
    for (const auto& c : stats["clients"]) dropped_max = std::max(dropped_max, c["dropped"].get<std::uint64_t>());
    CHECK(dropped_max > 0);
    CHECK(stats["loop"]["ticks"].get<std::uint64_t>() > 1000);
    // The healthy socket still streams, in order.
    auto a = healthy.next()["seq"].get<std::uint64_t>();
    for (int i = 0; i < 50; ++i) {
        const auto b = healthy.next()["seq"].get<std::uint64_t>();
        CHECK(b > a);
        a = b;
    }
    stalled.drop();
    healthy.drop();
}
