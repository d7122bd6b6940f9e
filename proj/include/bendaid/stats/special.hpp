#pragma once

namespace bendaid::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
/// (modified Lentz) with the usual symmetry swap for fast convergence.
double incomplete_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly in the tail so small values keep their precision.
double gamma_q(double a, double x);

}  // namespace bendaid::stats
