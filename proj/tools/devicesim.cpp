// Runs the simulated knob offline against a gesture profile and writes the
// telemetry stream and/or the resulting pitch contour.

#include <algorithm>
#include <cctype>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bendaid/protocol/codec.hpp"
#include "bendaid/session/contour_csv.hpp"
#include "bendaid/sim/device.hpp"
#include "file_io.hpp"

using namespace bendaid;

int main(int argc, char** argv) {
    CLI::App app{"Offline TorqueTuner simulator"};
    std::string mode_text = "SMOOTH";
    std::string profile_path;
    std::string out_path;
    std::string telemetry_path;
    std::string save_profile_path;
    std::vector<std::string> params;
    double depth = 0.0;
    double rate = 5.0;
    double duration = 9.0;
    double jitter = 0.0;
    std::uint64_t seed = 0;
    double cents_at_max = 200.0;

    app.add_option("--mode", mode_text, "Haptic mode (smooth, detent, spring, free, vibrato)");
    auto* profile_opt =
        app.add_option("--profile", profile_path, "Gesture profile JSON")->check(CLI::ExistingFile);
    auto* depth_opt = app.add_option("--vibrato-depth", depth,
                                     "Synthesize a vibrato gesture of this depth in degrees instead");
    app.add_option("--vibrato-rate", rate, "Vibrato rate in Hz")->needs(depth_opt);
    app.add_option("--duration", duration, "Vibrato gesture length in seconds")->needs(depth_opt);
    app.add_option("--jitter", jitter, "Uniform torque jitter amplitude")->needs(depth_opt);
    app.add_option("--seed", seed, "Jitter seed")->needs(depth_opt);
    profile_opt->excludes(depth_opt);
    app.add_option("--param", params, "Parameter override key=value (repeatable)");
    app.add_option("--cents-at-max", cents_at_max, "Pitch bend at 90 degrees, in cents");
    app.add_option("--out", out_path, "Write the pitch contour CSV (t_ms,cents)");
    app.add_option("--telemetry", telemetry_path, "Write wire-protocol telemetry lines");
    app.add_option("--save-profile", save_profile_path, "Write the gesture profile used as JSON");
    CLI11_PARSE(app, argc, argv);

    try {
        std::string upper = mode_text;
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        const auto mode = haptic::parse_mode_name(upper);
        if (!mode) throw std::runtime_error("unknown mode '" + mode_text + "'");

        haptic::HapticModeConfig config;
        config.mode = *mode;
        for (const auto& kv : params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::runtime_error("--param expects key=value: " + kv);
            config = haptic::with_param(config, kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
        }

        const sim::RotorParams rotor;
        sim::GestureProfile profile;
        if (!profile_path.empty()) {
            profile = nlohmann::json::parse(tools::read_file(profile_path)).get<sim::GestureProfile>();
        } else if (*depth_opt) {
            profile = sim::make_vibrato_gesture(depth, rate, duration, rotor);
            profile.jitter = jitter;
            profile.seed = seed;
        } else {
            throw std::runtime_error("give --profile or --vibrato-depth");
        }
        if (!save_profile_path.empty()) {
            tools::write_file(save_profile_path, nlohmann::json(profile).dump(2) + "\n");
        }

        const auto samples = sim::run_profile(profile, config, rotor);

        if (!out_path.empty()) {
            session::PitchMapConfig map;
            map.cents_at_max = cents_at_max;
            tools::write_file(out_path, session::export_csv(session::record(map, samples)));
        }
        if (!telemetry_path.empty() || out_path.empty()) {
            std::string lines;
            lines.reserve(samples.size() * 48);
            for (const auto& s : samples) lines += protocol::encode_telemetry(s);
            if (telemetry_path.empty()) {
                std::cout << lines;
            } else {
                tools::write_file(telemetry_path, lines);
            }
        }
        std::cerr << samples.size() << " ticks, mode " << haptic::mode_name(config.mode) << "\n";
    } catch (const std::exception& e) {
        std::cerr << "devicesim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
