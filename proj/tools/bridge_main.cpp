// Bridge service: owns the device and serves the HTTP/WebSocket API.

#include <csignal>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "bendaid/bridge/http_server.hpp"
#include "file_io.hpp"

using namespace bendaid;

int main(int argc, char** argv) {
    CLI::App app{"TorqueTuner bridge service"};
    bridge::BridgeConfig config;
    std::string profile_path;
    std::string log_level = "info";
    bool auto_connect = false;
    app.add_option("--device", config.device, "sim or serial:<path>");
    app.add_option("--host", config.host, "Listen address");
    app.add_option("--port", config.port, "Listen port (0 picks one)");
    app.add_option("--downsample", config.telemetry_downsample, "Forward every Nth sample to clients")
        ->check(CLI::PositiveNumber);
    app.add_option("--queue", config.client_queue_capacity, "Per-client telemetry queue length")
        ->check(CLI::PositiveNumber);
    app.add_option("--record-dir", config.record_dir, "Directory for recorded contours");
    app.add_option("--profile", profile_path, "Gesture profile JSON looped as the simulated hand")
        ->check(CLI::ExistingFile);
    app.add_flag("--connect", auto_connect, "Connect to the device at startup");
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error");
    CLI11_PARSE(app, argc, argv);

    spdlog::set_level(spdlog::level::from_str(log_level));

    // Block termination signals before any thread starts so only sigwait
    // below sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    try {
        if (!profile_path.empty()) {
            config.gesture =
                nlohmann::json::parse(tools::read_file(profile_path)).get<sim::GestureProfile>();
        }
        bridge::Bridge service(config);
        if (auto_connect) service.connect();
        bridge::HttpServer server(service);
        server.start();
        std::cout << "listening on http://" << config.host << ":" << server.port() << std::endl;

        int sig = 0;
        sigwait(&signals, &sig);
        spdlog::info("signal {}, shutting down", sig);
        server.stop();
        service.disconnect();
    } catch (const std::exception& e) {
        std::cerr << "bridge: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
