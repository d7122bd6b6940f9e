#include "bendaid/stats/chi_square.hpp"

#include <algorithm>
#include <cmath>

#include "bendaid/stats/anova.hpp"
#include "bendaid/stats/distributions.hpp"

namespace bendaid::stats {

ChiSquareResult chi_square(const std::vector<std::vector<double>>& table) {
    const std::size_t rows = table.size();
    if (rows < 2 || table.front().size() < 2) {
        throw StatsError("chi-square needs at least a 2x2 table");
    }
    const std::size_t cols = table.front().size();
    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> col_sum(cols, 0.0);
    double n = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (table[i].size() != cols) throw StatsError("chi-square table rows differ in length");
        for (std::size_t j = 0; j < cols; ++j) {
            const double c = table[i][j];
            if (!(c >= 0.0) || !std::isfinite(c)) throw StatsError("chi-square counts must be >= 0");
            row_sum[i] += c;
            col_sum[j] += c;
            n += c;
        }
    }
    if (std::any_of(row_sum.begin(), row_sum.end(), [](double s) { return s == 0.0; }) ||
        std::any_of(col_sum.begin(), col_sum.end(), [](double s) { return s == 0.0; })) {
        throw StatsError("chi-square table has an all-zero row or column");
    }

    ChiSquareResult r;
    r.n = n;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double expected = row_sum[i] * col_sum[j] / n;
            const double d = table[i][j] - expected;
            r.chi2 += d * d / expected;
        }
    }
    r.df = static_cast<int>((rows - 1) * (cols - 1));
    r.p = chi2_sf(r.chi2, r.df);
    r.cramers_v = cramers_v(r.chi2, n, static_cast<int>(rows), static_cast<int>(cols));
    return r;
}

double cramers_v(double chi2, double n, int rows, int cols) {
    const int k = std::min(rows, cols) - 1;
    if (!(n > 0.0) || k < 1 || !(chi2 >= 0.0)) {
        throw StatsError("cramers_v needs n > 0, a table of at least 2x2, chi2 >= 0");
    }
    return std::sqrt(chi2 / (n * k));
}

}  // namespace bendaid::stats
