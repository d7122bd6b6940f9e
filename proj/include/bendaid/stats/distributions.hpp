#pragma once

namespace bendaid::stats {

double f_cdf(double f, double df1, double df2);
/// P(F > f) for F ~ F(df1, df2). +inf maps to 0.
double f_sf(double f, double df1, double df2);

/// P(X > x) for X ~ chi-square(df).
double chi2_sf(double x, double df);

double student_t_cdf(double t, double df);
/// Inverse of student_t_cdf for p in (0, 1).
double student_t_quantile(double p, double df);

}  // namespace bendaid::stats
