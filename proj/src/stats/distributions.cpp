#include "bendaid/stats/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "bendaid/stats/special.hpp"

namespace bendaid::stats {

double f_cdf(double f, double df1, double df2) { return 1.0 - f_sf(f, df1, df2); }

double f_sf(double f, double df1, double df2) {
    if (!(df1 > 0.0) || !(df2 > 0.0)) throw std::domain_error("F distribution needs df > 0");
    if (std::isnan(f)) throw std::domain_error("F statistic is NaN");
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

double chi2_sf(double x, double df) {
    if (!(df > 0.0)) throw std::domain_error("chi-square needs df > 0");
    return gamma_q(df / 2.0, x / 2.0);
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw std::domain_error("t distribution needs df > 0");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile needs p in (0, 1)");
    if (p == 0.5) return 0.0;
    // Bracket, then bisect to machine precision; the cdf is monotone.
    double lo = -1.0;
    double hi = 1.0;
    for (int i = 0; i < 1000 && student_t_cdf(lo, df) > p; ++i) lo *= 2.0;
    for (int i = 0; i < 1000 && student_t_cdf(hi, df) < p; ++i) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace bendaid::stats
