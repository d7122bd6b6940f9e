#include "bendaid/session/score.hpp"

#include <algorithm>
#include <cmath>

namespace bendaid::session {

std::vector<double> resample(const PitchContour& contour, double t0_ms, double t1_ms, double step_ms) {
    std::vector<double> out;
    if (t1_ms < t0_ms) return out;
    const auto n = static_cast<std::size_t>(std::floor((t1_ms - t0_ms) / step_ms + 1e-9)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(interpolate(contour, t0_ms + static_cast<double>(i) * step_ms));
    }
    return out;
}

int count_peaks(const std::vector<double>& v, double threshold) {
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > threshold && v[i] > v[i - 1] && v[i] >= v[i + 1]) {
            ++peaks;
        }
    }
    return peaks;
}

MimicryScore score(const PitchContour& performed, const PitchContour& reference) {
    if (performed.empty() || reference.empty()) {
        throw SessionError("cannot score an empty contour");
    }
    const double t0 = std::max(performed.samples.front().t_ms, reference.samples.front().t_ms);
    const double t1 = std::min(performed.samples.back().t_ms, reference.samples.back().t_ms);
    if (t1 < t0) {
        throw SessionError("contours do not overlap in time");
    }
    const double step = 1000.0 / kScoreGridHz;
    const auto a = resample(performed, t0, t1, step);
    const auto b = resample(reference, t0, t1, step);
    const auto n = static_cast<double>(a.size());

    double sq = 0.0, mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - mean_a) * (b[i] - mean_b);
        var_a += (a[i] - mean_a) * (a[i] - mean_a);
        var_b += (b[i] - mean_b) * (b[i] - mean_b);
    }

    MimicryScore s;
    s.rmse_cents = std::sqrt(sq / n);
    if (var_a > 0.0 && var_b > 0.0) {
        s.correlation = std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
    }
    const auto [lo, hi] = std::minmax_element(b.begin(), b.end());
    const double threshold = *lo + (*hi - *lo) / 2.0;
    s.peak_count_delta = count_peaks(a, threshold) - count_peaks(b, threshold);
    return s;
}

}  // namespace bendaid::session
