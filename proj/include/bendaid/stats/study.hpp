#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bendaid/stats/anova.hpp"
#include "bendaid/stats/chi_square.hpp"

namespace bendaid::stats {

/// The three study conditions, in tie-break priority order.
enum class StudyMode { Smooth, Detent, Spring };
enum class Category { Comfort, Flexibility, EaseOfControl, Helpfulness };

inline constexpr std::array<StudyMode, 3> kStudyModes{StudyMode::Smooth, StudyMode::Detent,
                                                      StudyMode::Spring};
inline constexpr std::array<Category, 4> kCategories{Category::Comfort, Category::Flexibility,
                                                     Category::EaseOfControl, Category::Helpfulness};

std::string_view to_string(StudyMode mode) noexcept;
std::string_view to_string(Category category) noexcept;

class StudyFormatError : public std::runtime_error {
public:
    StudyFormatError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct LikertRow {
    std::string participant;
    StudyMode mode = StudyMode::Smooth;
    Category category = Category::Comfort;
    int rating = 1;
};

struct LikertTable {
    std::vector<LikertRow> rows;
};

/// Header `participant,mode,category,rating`; ratings are integers 1..10;
/// mode and category tokens are case-insensitive. Rejects duplicate
/// (participant, mode, category) keys, naming the key.
LikertTable load_study_csv(std::string_view text);

/// Header `participant,background`, e.g. wind / string.
std::map<std::string, std::string> load_background_csv(std::string_view text);

struct ModeSummary {
    StudyMode mode = StudyMode::Smooth;
    std::size_t n = 0;
    MeanInterval ci;
};

struct CategoryReport {
    Category category = Category::Comfort;
    AnovaResult anova;
    std::vector<ModeSummary> modes;
};

struct Preference {
    std::string participant;
    StudyMode mode = StudyMode::Smooth;
    /// True when another mode had the same best average and the
    /// Smooth < Detent < Spring order decided.
    bool tie = false;
    std::array<std::optional<double>, 3> averages{};
};

struct PreferenceAssociation {
    std::vector<std::string> backgrounds;  ///< table rows
    std::vector<StudyMode> modes;          ///< table columns (never-chosen modes dropped)
    std::vector<std::vector<double>> counts;
    ChiSquareResult result;
};

struct StatsReport {
    std::vector<CategoryReport> categories;
    std::vector<Preference> preferences;
    std::array<int, 3> preference_counts{};
    std::optional<PreferenceAssociation> association;
};

/// Per-category ANOVA across modes, per-mode 95% CIs, and each
/// participant's preferred mode (highest mean over the categories they rated).
/// Categories with fewer than two modes of two ratings are left out.
StatsReport summarize(const LikertTable& table);

/// Background x preferred-mode chi-square. Participants without a background
/// entry are skipped.
PreferenceAssociation preference_association(const StatsReport& report,
                                             const std::map<std::string, std::string>& backgrounds);

nlohmann::json to_json(const StatsReport& report);

}  // namespace bendaid::stats
