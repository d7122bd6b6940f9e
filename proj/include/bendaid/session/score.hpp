#pragma once

#include <vector>

#include "bendaid/session/contour.hpp"

namespace bendaid::session {

struct MimicryScore {
    double rmse_cents = 0.0;
    /// Pearson r on the common grid; 0 when either side has no variance.
    double correlation = 0.0;
    /// Peaks in the performance minus peaks in the reference.
    int peak_count_delta = 0;
};

inline constexpr double kScoreGridHz = 100.0;

/// Samples `contour` at t0, t0 + step, ... up to and including t1.
std::vector<double> resample(const PitchContour& contour, double t0_ms, double t1_ms, double step_ms);

/// Local maxima strictly above `threshold`; a plateau counts once.
int count_peaks(const std::vector<double>& values, double threshold);

/// Compares two contours on a shared 100 Hz grid over their overlapping time
/// range. Peaks are counted above the midpoint of the reference's range.
/// Throws SessionError when either is empty or they do not overlap.
MimicryScore score(const PitchContour& performed, const PitchContour& reference);

}  // namespace bendaid::session
