// Contour utilities: score a performance, render the reference vibrato,
// convert captured telemetry into a contour.

#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bendaid/protocol/decoder.hpp"
#include "bendaid/sequencer/clip_json.hpp"
#include "bendaid/sequencer/midi_file.hpp"
#include "bendaid/session/contour_csv.hpp"
#include "bendaid/session/reference.hpp"
#include "bendaid/session/score.hpp"
#include "file_io.hpp"

using namespace bendaid;

namespace {

session::PitchContour load_contour(const std::string& path, session::ContourSource source) {
    return session::import_csv(tools::read_file(path), source);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
    } else {
        tools::write_file(path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pitch-contour tools"};
    app.require_subcommand(1);

    auto* score_cmd = app.add_subcommand("score", "Compare a performed contour with a reference");
    std::string performed_path;
    std::string reference_path;
    bool as_json = false;
    score_cmd->add_option("--performed", performed_path)->required()->check(CLI::ExistingFile);
    score_cmd->add_option("--reference", reference_path)->required()->check(CLI::ExistingFile);
    score_cmd->add_flag("--json", as_json, "Print JSON");

    auto* ref_cmd = app.add_subcommand("reference", "Render the reference vibrato contour");
    session::ReferenceVibrato shape;
    std::string clip_path;
    std::string midi_path;
    std::string ref_out;
    ref_cmd->add_option("--depth", shape.depth_cents, "Depth in cents");
    ref_cmd->add_option("--rate", shape.rate_hz, "Rate in Hz");
    ref_cmd->add_option("--onset", shape.onset_s, "Flat lead-in per note, seconds");
    auto* clip_opt = ref_cmd->add_option("--clip", clip_path, "Clip JSON")->check(CLI::ExistingFile);
    ref_cmd->add_option("--midi", midi_path, "Standard MIDI file")
        ->check(CLI::ExistingFile)
        ->excludes(clip_opt);
    ref_cmd->add_option("--out", ref_out, "Output CSV (stdout if omitted)");

    auto* rec_cmd = app.add_subcommand("record", "Turn wire telemetry lines into a contour CSV");
    std::string telemetry_path;
    std::string rec_out;
    session::PitchMapConfig map;
    rec_cmd->add_option("--telemetry", telemetry_path)->required()->check(CLI::ExistingFile);
    rec_cmd->add_option("--cents-at-max", map.cents_at_max, "Pitch bend at angle_max");
    rec_cmd->add_option("--out", rec_out, "Output CSV (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*score_cmd) {
            const auto performed = load_contour(performed_path, session::ContourSource::Recorded);
            const auto reference = load_contour(reference_path, session::ContourSource::Reference);
            const auto s = session::score(performed, reference);
            if (as_json) {
                std::cout << nlohmann::json{{"rmse_cents", s.rmse_cents},
                                            {"correlation", s.correlation},
                                            {"peak_count_delta", s.peak_count_delta}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << std::fixed << std::setprecision(4) << "rmse_cents        " << s.rmse_cents
                          << "\ncorrelation       " << s.correlation << "\npeak_count_delta  "
                          << s.peak_count_delta << "\n";
            }
        } else if (*ref_cmd) {
            sequencer::Clip clip = sequencer::make_reference_clip();
            if (!clip_path.empty()) {
                clip = sequencer::clip_from_json(nlohmann::json::parse(tools::read_file(clip_path)));
            } else if (!midi_path.empty()) {
                const auto bytes = tools::read_file(midi_path);
                clip = sequencer::load_midi(
                    {reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()});
            }
            emit(ref_out, session::export_csv(session::reference_contour(shape, clip)));
        } else if (*rec_cmd) {
            protocol::StreamDecoder decoder;
            session::ContourRecorder recorder(map);
            for (const auto& frame : decoder.feed(tools::read_file(telemetry_path))) {
                if (const auto* t = std::get_if<protocol::TelemetryFrame>(&frame)) recorder.push(t->sample);
            }
            if (decoder.stats().frames_dropped > 0) {
                std::cerr << "session: skipped " << decoder.stats().frames_dropped << " bad lines\n";
            }
            emit(rec_out, session::export_csv(recorder.contour()));
        }
    } catch (const std::exception& e) {
        std::cerr << "session: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
