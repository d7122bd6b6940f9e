// User-study analysis: per-category one-way ANOVA, per-mode 95% intervals,
// preferred modes and the background x preference chi-square.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "bendaid/stats/study.hpp"
#include "file_io.hpp"

using namespace bendaid;

namespace {

void print_text(const stats::StatsReport& report) {
    for (const auto& c : report.categories) {
        std::printf("%s: F(%d, %d) = %.4f, p = %.4f, eta^2 = %.4f\n",
                    std::string(stats::to_string(c.category)).c_str(), c.anova.df1, c.anova.df2,
                    c.anova.f, c.anova.p, c.anova.eta_squared);
        for (const auto& m : c.modes) {
            std::printf("  %-7s n=%-3zu mean %.3f  95%% CI [%.3f, %.3f]\n",
                        std::string(stats::to_string(m.mode)).c_str(), m.n, m.ci.mean, m.ci.lo,
                        m.ci.hi);
        }
    }
    std::printf("preferred: ");
    for (auto m : stats::kStudyModes) {
        std::printf("%s %d  ", std::string(stats::to_string(m)).c_str(),
                    report.preference_counts[static_cast<std::size_t>(m)]);
    }
    std::printf("\n");
    if (report.association) {
        const auto& r = report.association->result;
        std::printf("background x preference: chi2(%d) = %.4f, p = %.5f, V = %.4f, n = %g\n", r.df,
                    r.chi2, r.p, r.cramers_v, r.n);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Likert study statistics"};
    app.require_subcommand(1);
    auto* report_cmd = app.add_subcommand("report", "Summarize a ratings CSV");
    std::string ratings_path;
    std::string background_path;
    bool as_json = false;
    report_cmd->add_option("ratings", ratings_path, "participant,mode,category,rating")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("--background", background_path, "participant,background")
        ->check(CLI::ExistingFile);
    report_cmd->add_flag("--json", as_json, "Print the full report as JSON");
    CLI11_PARSE(app, argc, argv);

    try {
        auto report = stats::summarize(stats::load_study_csv(tools::read_file(ratings_path)));
        if (!background_path.empty()) {
            report.association = stats::preference_association(
                report, stats::load_background_csv(tools::read_file(background_path)));
        }
        if (as_json) {
            std::cout << stats::to_json(report).dump(2) << "\n";
        } else {
            print_text(report);
        }
    } catch (const std::exception& e) {
        std::cerr << "studystats: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
