#pragma once

// Reference computations that share no code with the library under test.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

/// Fine-step classical RK4 for a released linear spring-damper knob:
/// theta'' = kDegPerRad * (-k * theta - c * theta') / inertia, no clamp.
inline double spring_release_angle(double theta0, double k, double c, double inertia, double t_end,
                                   double h = 1e-5) {
    auto acc = [&](double th, double om) { return kDegPerRad * (-k * th - c * om) / inertia; };
    double th = theta0, om = 0.0;
    const long n = std::lround(t_end / h);
    for (long i = 0; i < n; ++i) {
        const double k1t = om, k1o = acc(th, om);
        const double k2t = om + 0.5 * h * k1o, k2o = acc(th + 0.5 * h * k1t, om + 0.5 * h * k1o);
        const double k3t = om + 0.5 * h * k2o, k3o = acc(th + 0.5 * h * k2t, om + 0.5 * h * k2o);
        const double k4t = om + h * k3o, k4o = acc(th + h * k3t, om + h * k3o);
        th += h / 6.0 * (k1t + 2 * k2t + 2 * k3t + k4t);
        om += h / 6.0 * (k1o + 2 * k2o + 2 * k3o + k4o);
    }
    return th;
}

/// Underdamped closed form of the same ODE.
inline double spring_release_exact(double theta0, double k, double c, double inertia, double t) {
    const double w0sq = kDegPerRad * k / inertia;
    const double zeta2 = kDegPerRad * c / inertia;  // 2 * zeta * w0
    const double a = zeta2 / 2.0;
    const double wd = std::sqrt(w0sq - a * a);
    return theta0 * std::exp(-a * t) * (std::cos(wd * t) + a / wd * std::sin(wd * t));
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// F(d1, d2) density from its textbook definition.
inline double f_density(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    const double lb = std::lgamma(d1 / 2) + std::lgamma(d2 / 2) - std::lgamma((d1 + d2) / 2);
    const double logf = 0.5 * d1 * std::log(d1 / d2) + (d1 / 2 - 1) * std::log(x) -
                        0.5 * (d1 + d2) * std::log1p(d1 * x / d2) - lb;
    return std::exp(logf);
}

}  // namespace oracle
