#include "bendaid/stats/study.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <tuple>

namespace bendaid::stats {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

// Calls fn(fields, line_no) for each non-blank data row after checking the header.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view header, Fn&& fn) {
    std::size_t line_no = 0;
    bool saw_header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (!saw_header) {
            if (lower(line) != header) {
                throw StudyFormatError("expected header '" + std::string(header) + "'", line_no);
            }
            saw_header = true;
            continue;
        }
        fn(split(line), line_no);
    }
    if (!saw_header) throw StudyFormatError("missing header", 1);
}

std::optional<StudyMode> parse_mode(std::string_view token) {
    const auto t = lower(token);
    for (auto m : kStudyModes) {
        if (lower(to_string(m)) == t) return m;
    }
    return std::nullopt;
}

std::optional<Category> parse_category(std::string_view token) {
    auto t = lower(token);
    std::replace(t.begin(), t.end(), ' ', '_');
    for (auto c : kCategories) {
        if (to_string(c) == t) return c;
    }
    return std::nullopt;
}

std::size_t index(StudyMode m) { return static_cast<std::size_t>(m); }

}  // namespace

std::string_view to_string(StudyMode mode) noexcept {
    switch (mode) {
    case StudyMode::Smooth:
        return "Smooth";
    case StudyMode::Detent:
        return "Detent";
    case StudyMode::Spring:
        return "Spring";
    }
    return "Smooth";
}

std::string_view to_string(Category category) noexcept {
    switch (category) {
    case Category::Comfort:
        return "comfort";
    case Category::Flexibility:
        return "flexibility";
    case Category::EaseOfControl:
        return "ease_of_control";
    case Category::Helpfulness:
        return "helpfulness";
    }
    return "comfort";
}

LikertTable load_study_csv(std::string_view text) {
    LikertTable table;
    std::set<std::tuple<std::string, StudyMode, Category>> seen;
    for_each_row(text, "participant,mode,category,rating", [&](const auto& f, std::size_t line) {
        if (f.size() != 4) throw StudyFormatError("expected 4 fields", line);
        if (f[0].empty()) throw StudyFormatError("empty participant id", line);
        const auto mode = parse_mode(f[1]);
        if (!mode) throw StudyFormatError("unknown mode '" + std::string(f[1]) + "'", line);
        const auto category = parse_category(f[2]);
        if (!category) throw StudyFormatError("unknown category '" + std::string(f[2]) + "'", line);
        int rating = 0;
        auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), rating);
        if (f[3].empty() || ec != std::errc{} || ptr != f[3].data() + f[3].size()) {
            throw StudyFormatError("rating '" + std::string(f[3]) + "' is not an integer", line);
        }
        if (rating < 1 || rating > 10) {
            throw StudyFormatError("rating " + std::to_string(rating) + " outside 1..10", line);
        }
        LikertRow row{std::string(f[0]), *mode, *category, rating};
        if (!seen.emplace(row.participant, row.mode, row.category).second) {
            throw StudyFormatError("duplicate rating for (" + row.participant + ", " +
                                       std::string(to_string(row.mode)) + ", " +
                                       std::string(to_string(row.category)) + ")",
                                   line);
        }
        table.rows.push_back(std::move(row));
    });
    return table;
}

std::map<std::string, std::string> load_background_csv(std::string_view text) {
    std::map<std::string, std::string> out;
    for_each_row(text, "participant,background", [&](const auto& f, std::size_t line) {
        if (f.size() != 2 || f[0].empty() || f[1].empty()) {
            throw StudyFormatError("expected participant,background", line);
        }
        if (!out.emplace(std::string(f[0]), lower(f[1])).second) {
            throw StudyFormatError("duplicate participant '" + std::string(f[0]) + "'", line);
        }
    });
    return out;
}

StatsReport summarize(const LikertTable& table) {
    StatsReport report;

    for (auto category : kCategories) {
        std::array<std::vector<double>, 3> by_mode;
        for (const auto& row : table.rows) {
            if (row.category == category) by_mode[index(row.mode)].push_back(row.rating);
        }
        CategoryReport cat;
        cat.category = category;
        std::vector<std::vector<double>> groups;
        for (auto m : kStudyModes) {
            const auto& v = by_mode[index(m)];
            if (v.size() < 2) continue;
            groups.push_back(v);
            cat.modes.push_back({m, v.size(), mean_ci95(v)});
        }
        if (groups.size() < 2) continue;
        cat.anova = one_way_anova(groups);
        report.categories.push_back(std::move(cat));
    }

    // participant -> per-mode (sum, count), in first-appearance order
    std::vector<std::string> order;
    std::map<std::string, std::array<std::pair<double, int>, 3>> totals;
    for (const auto& row : table.rows) {
        auto [it, inserted] = totals.try_emplace(row.participant);
        if (inserted) order.push_back(row.participant);
        auto& t = it->second[index(row.mode)];
        t.first += row.rating;
        t.second += 1;
    }
    for (const auto& participant : order) {
        Preference pref;
        pref.participant = participant;
        std::optional<double> best;
        for (auto m : kStudyModes) {
            const auto [sum, count] = totals[participant][index(m)];
            if (count == 0) continue;
            const double avg = sum / count;
            pref.averages[index(m)] = avg;
            if (!best || avg > *best) {
                best = avg;
                pref.mode = m;
                pref.tie = false;
            } else if (avg == *best) {
                pref.tie = true;
            }
        }
        ++report.preference_counts[index(pref.mode)];
        report.preferences.push_back(std::move(pref));
    }
    return report;
}

PreferenceAssociation preference_association(const StatsReport& report,
                                             const std::map<std::string, std::string>& backgrounds) {
    std::map<std::string, std::array<double, 3>> counts;
    for (const auto& pref : report.preferences) {
        auto it = backgrounds.find(pref.participant);
        if (it == backgrounds.end()) continue;
        counts[it->second][index(pref.mode)] += 1.0;
    }
    PreferenceAssociation assoc;
    for (auto m : kStudyModes) {
        const bool used = std::any_of(counts.begin(), counts.end(),
                                      [m](const auto& kv) { return kv.second[index(m)] > 0.0; });
        if (used) assoc.modes.push_back(m);
    }
    for (const auto& [background, row] : counts) {
        assoc.backgrounds.push_back(background);
        std::vector<double> r;
        for (auto m : assoc.modes) r.push_back(row[index(m)]);
        assoc.counts.push_back(std::move(r));
    }
    assoc.result = chi_square(assoc.counts);
    return assoc;
}

nlohmann::json to_json(const StatsReport& report) {
    using nlohmann::json;
    json cats = json::array();
    for (const auto& c : report.categories) {
        json modes = json::array();
        for (const auto& m : c.modes) {
            modes.push_back({{"mode", to_string(m.mode)},
                             {"n", m.n},
                             {"mean", m.ci.mean},
                             {"ci95", {m.ci.lo, m.ci.hi}}});
        }
        cats.push_back({{"category", to_string(c.category)},
                        {"anova",
                         {{"F", std::isinf(c.anova.f) ? json(nullptr) : json(c.anova.f)},
                          {"df1", c.anova.df1},
                          {"df2", c.anova.df2},
                          {"p", c.anova.p},
                          {"eta_squared", c.anova.eta_squared}}},
                        {"modes", std::move(modes)}});
    }
    json prefs = json::array();
    for (const auto& p : report.preferences) {
        json avgs = json::object();
        for (auto m : kStudyModes) {
            const auto& a = p.averages[index(m)];
            avgs[std::string(to_string(m))] = a ? json(*a) : json(nullptr);
        }
        prefs.push_back({{"participant", p.participant},
                         {"preferred", to_string(p.mode)},
                         {"tie", p.tie},
                         {"averages", std::move(avgs)}});
    }
    json counts = json::object();
    for (auto m : kStudyModes) counts[std::string(to_string(m))] = report.preference_counts[index(m)];

    json out = {{"categories", std::move(cats)},
                {"preferences", std::move(prefs)},
                {"preference_counts", std::move(counts)}};
    if (report.association) {
        const auto& a = *report.association;
        json modes = json::array();
        for (auto m : a.modes) modes.push_back(to_string(m));
        out["preference_association"] = {{"backgrounds", a.backgrounds},
                                         {"modes", std::move(modes)},
                                         {"counts", a.counts},
                                         {"chi2", a.result.chi2},
                                         {"df", a.result.df},
                                         {"p", a.result.p},
                                         {"cramers_v", a.result.cramers_v},
                                         {"n", a.result.n}};
    }
    return out;
}

}  // namespace bendaid::stats
