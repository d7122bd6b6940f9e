#pragma once

#include <vector>

namespace bendaid::stats {

struct ChiSquareResult {
    double chi2 = 0.0;
    int df = 0;
    double p = 1.0;
    double cramers_v = 0.0;
    double n = 0.0;
};

/// Pearson chi-square test of independence on an r x c table of counts.
/// Rejects ragged tables, negative counts and all-zero rows or columns.
ChiSquareResult chi_square(const std::vector<std::vector<double>>& table);

/// sqrt(chi2 / (n * min(rows - 1, cols - 1))).
double cramers_v(double chi2, double n, int rows, int cols);

}  // namespace bendaid::stats
