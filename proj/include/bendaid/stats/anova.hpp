#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace bendaid::stats {

class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AnovaResult {
    double f = 0.0;
    int df1 = 0;  ///< k - 1
    int df2 = 0;  ///< N - k
    double p = 1.0;
    double eta_squared = 0.0;
    double ss_between = 0.0;
    double ss_within = 0.0;
};

/// Classical one-way between-groups ANOVA. Needs at least two groups of at
/// least two values. With no variance at all F = 0 and p = 1; with variance
/// only between groups F = +inf and p = 0.
AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

/// Effect size recovered from a reported F: df1*F / (df1*F + df2).
double eta_squared_from_f(double f, double df1, double df2);

struct MeanInterval {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

/// mean +/- t(0.975, n-1) * s / sqrt(n). Needs n >= 2.
MeanInterval mean_ci95(std::span<const double> values);

}  // namespace bendaid::stats
