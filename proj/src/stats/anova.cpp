#include "bendaid/stats/anova.hpp"

#include <cmath>
#include <limits>

#include "bendaid/stats/distributions.hpp"

namespace bendaid::stats {

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) {
        throw StatsError("ANOVA needs at least two groups");
    }
    std::size_t total_n = 0;
    double grand_sum = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw StatsError("every ANOVA group needs at least two values");
        for (double v : g) {
            if (!std::isfinite(v)) throw StatsError("ANOVA input must be finite");
            grand_sum += v;
        }
        total_n += g.size();
    }
    const double grand_mean = grand_sum / static_cast<double>(total_n);

    AnovaResult r;
    for (const auto& g : groups) {
        double sum = 0.0;
        for (double v : g) sum += v;
        const double mean = sum / static_cast<double>(g.size());
        r.ss_between += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
        for (double v : g) r.ss_within += (v - mean) * (v - mean);
    }
    r.df1 = static_cast<int>(groups.size()) - 1;
    r.df2 = static_cast<int>(total_n - groups.size());

    const double ss_total = r.ss_between + r.ss_within;
    if (ss_total == 0.0) {
        r.f = 0.0;
        r.p = 1.0;
        r.eta_squared = 0.0;
        return r;
    }
    if (r.ss_within == 0.0) {
        r.f = std::numeric_limits<double>::infinity();
        r.p = 0.0;
        r.eta_squared = 1.0;
        return r;
    }
    r.f = (r.ss_between / r.df1) / (r.ss_within / r.df2);
    r.p = f_sf(r.f, r.df1, r.df2);
    r.eta_squared = r.ss_between / ss_total;
    return r;
}

double eta_squared_from_f(double f, double df1, double df2) {
    if (!(f >= 0.0) || !(df1 >= 1.0) || !(df2 >= 1.0)) {
        throw StatsError("eta_squared_from_f needs F >= 0 and df >= 1");
    }
    if (std::isinf(f)) return 1.0;
    return df1 * f / (df1 * f + df2);
}

MeanInterval mean_ci95(std::span<const double> values) {
    if (values.size() < 2) {
        throw StatsError("confidence interval needs at least two values");
    }
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double half = student_t_quantile(0.975, n - 1.0) * sd / std::sqrt(n);
    return {mean, mean - half, mean + half};
}

}  // namespace bendaid::stats
