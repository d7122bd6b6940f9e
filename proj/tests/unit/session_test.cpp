#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bendaid/session/contour_csv.hpp"
#include "bendaid/session/reference.hpp"
#include "bendaid/session/score.hpp"
#include "bendaid/sim/device.hpp"
#include "support/oracles.hpp"

using namespace bendaid;
using namespace bendaid::session;

namespace {

PitchContour flat(double t0, double t1, double cents) {
    PitchContour c;
    for (double t = t0; t <= t1; t += 1.0) c.samples.push_back({t, cents});
    return c;
}

PitchContour shifted(PitchContour c, double by) {
    for (auto& p : c.samples) p.cents += by;
    return c;
}

// Reference shape written out longhand: three 3 s notes, 0.5 s flat onset,
// raised-cosine vibrato.
double reference_oracle(double t_ms, double depth, double rate) {
    const double tn = std::fmod(t_ms, 3000.0) / 1000.0;
    if (tn < 0.5) return 0.0;
    return depth * (1.0 - std::cos(2.0 * std::numbers::pi * rate * (tn - 0.5))) / 2.0;
}

}  // namespace

TEST_CASE("angle to cents map") {
    const PitchMapConfig m;
    CHECK(map_angle_to_cents(m, 0.0) == 0.0);
    CHECK(map_angle_to_cents(m, 45.0) == doctest::Approx(100.0));
    CHECK(map_angle_to_cents(m, 120.0) == 200.0);
    CHECK(map_angle_to_cents(m, -10.0) == 0.0);
    PitchMapConfig open = m;
    open.clamp = false;
    CHECK(map_angle_to_cents(open, 135.0) == doctest::Approx(300.0));
    double prev = -1.0;
    for (double a = -30.0; a <= 150.0; a += 0.25) {
        const double c = map_angle_to_cents(m, a);
        REQUIRE(c >= prev);
        prev = c;
    }
    PitchMapConfig bad = m;
    bad.angle_max_deg = 0.0;
    CHECK_THROWS_AS(bad.validate(), SessionError);
}

TEST_CASE("recording telemetry") {
    std::vector<sim::KnobSample> samples;
    for (std::uint64_t i = 1; i <= 1000; ++i) samples.push_back({i, i, 45.0, 0.0, 0.0, haptic::Mode::Spring});
    const auto c = record({}, samples);
    REQUIRE(c.samples.size() == 1000);
    for (const auto& p : c.samples) REQUIRE(p.cents == doctest::Approx(100.0));
    CHECK(record({}, {}).empty());
}

TEST_CASE("recorder folds a repeated timestamp into one point") {
    ContourRecorder r;
    r.push({1, 5, 45.0, 0, 0, haptic::Mode::Smooth});
    r.push({2, 5, 0.0, 0, 0, haptic::Mode::Spring});
    r.push({3, 4, 9.0, 0, 0, haptic::Mode::Spring});
    r.push({4, 6, 9.0, 0, 0, haptic::Mode::Spring});
    const auto c = r.take();
    REQUIRE(c.samples.size() == 2);
    CHECK(c.samples[0] == ContourPoint{5.0, 0.0});
    CHECK(c.samples[1].t_ms == 6.0);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("replayed gesture records identically") {
    auto g = sim::make_vibrato_gesture(20.0, 4.0, 1.0);
    g.jitter = 0.02;
    g.seed = 5;
    haptic::HapticModeConfig cfg;
    cfg.mode = haptic::Mode::Spring;
    CHECK(export_csv(record({}, sim::run_profile(g, cfg))) == export_csv(record({}, sim::run_profile(g, cfg))));
}

TEST_CASE("csv format") {
    PitchContour c{{{0.0, 1.5}, {1.0, -2.25}}, ContourSource::Recorded};
    CHECK(export_csv(c) == "t_ms,cents\n0,1.5000\n1,-2.2500\n");
    CHECK(import_csv("t_ms,cents\r\n0,1.5\r\n1,-2.25") == c);
    try {
        import_csv("t_ms,cents\nabc,1.0\n");
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(import_csv("time,cents\n"), CsvError);
    CHECK_THROWS_AS(import_csv("t_ms,cents\n2,0\n1,0\n"), CsvError);
    CHECK_THROWS_AS(import_csv("t_ms,cents\n1,nan\n"), CsvError);
    CHECK_THROWS_AS(import_csv("t_ms,cents\n1,2,3\n"), CsvError);
}

TEST_CASE("csv round trip on random contours") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> step(0.001, 50.0), cents(-1200.0, 1200.0);
    std::uniform_int_distribution<int> len(0, 300);
    for (int trial = 0; trial < 300; ++trial) {
        PitchContour c;
        double t = step(rng);
        const int n = len(rng);
        for (int i = 0; i < n; ++i) {
            c.samples.push_back({t, std::round(cents(rng) * 1e4) / 1e4});
            t += step(rng);
        }
        const auto text = export_csv(c);
        REQUIRE(import_csv(text) == c);
        REQUIRE(export_csv(import_csv(text)) == text);
    }
}

TEST_CASE("reference contour") {
    const auto ref = reference_contour();
    REQUIRE(ref.samples.size() == 9000);
    CHECK(ref.samples.front().t_ms == 0.0);
    CHECK(ref.samples.back().t_ms == 8999.0);
    CHECK(ref.source == ContourSource::Reference);
    double hi = -1.0;
    for (const auto& p : ref.samples) {
        REQUIRE(p.cents == doctest::Approx(reference_oracle(p.t_ms, 50.0, 5.0)).epsilon(1e-12).scale(1.0));
        hi = std::max(hi, p.cents);
    }
    CHECK(std::fabs(hi - 50.0) < 1e-9);
    for (double onset : {0.0, 3000.0, 6000.0}) CHECK(interpolate(ref, onset) == 0.0);
}

TEST_CASE("score identities") {
    const auto ref = reference_contour();
    auto s = score(ref, ref);
    CHECK(s.rmse_cents == 0.0);
    CHECK(s.correlation == doctest::Approx(1.0));
    CHECK(s.peak_count_delta == 0);

    s = score(shifted(ref, 10.0), ref);
    CHECK(s.rmse_cents == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.correlation == doctest::Approx(1.0));

    auto wobble = ref;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 4.0);
    for (auto& p : wobble.samples) p.cents += noise(rng);
    const auto ab = score(wobble, ref), ba = score(ref, wobble);
    CHECK(ab.rmse_cents == doctest::Approx(ba.rmse_cents).epsilon(1e-14));
    CHECK(ab.correlation == doctest::Approx(ba.correlation).epsilon(1e-14));
}

TEST_CASE("flat line against the reference") {
    const auto ref = reference_contour();
    const auto s = score(flat(0.0, 8999.0, 0.0), ref);
    double sq = 0.0;
    int n = 0;
    for (double t = 0.0; t <= 8999.0; t += 10.0, ++n) sq += std::pow(reference_oracle(t, 50.0, 5.0), 2);
    CHECK(n == 900);
    CHECK(s.rmse_cents == doctest::Approx(std::sqrt(sq / n)).epsilon(1e-12));
    CHECK(s.rmse_cents == doctest::Approx(27.876214).epsilon(1e-7));
    // Continuous limit of the same quantity.
    const double continuous = 50.0 * std::sqrt(2.5 / 3.0 * 3.0 / 8.0);
    CHECK(s.rmse_cents == doctest::Approx(continuous).epsilon(0.01));
    CHECK(s.correlation == 0.0);
    CHECK(s.peak_count_delta == -38);

    ReferenceVibrato deep;
    deep.depth_cents = 100.0;
    const auto s2 = score(flat(0.0, 8999.0, 0.0), reference_contour(deep));
    CHECK(s2.rmse_cents == doctest::Approx(2.0 * s.rmse_cents).epsilon(1e-12));
}

TEST_CASE("score errors and resampling") {
    CHECK_THROWS_AS(score({}, reference_contour()), SessionError);
    CHECK_THROWS_AS(score(flat(20000.0, 21000.0, 0.0), reference_contour()), SessionError);
    const PitchContour ramp{{{0.0, 0.0}, {100.0, 100.0}}, ContourSource::Recorded};
    const auto v = resample(ramp, 0.0, 100.0, 10.0);
    REQUIRE(v.size() == 11);
    CHECK(v[5] == doctest::Approx(50.0));
    CHECK(interpolate(ramp, -5.0) == 0.0);
    CHECK(interpolate(ramp, 500.0) == 100.0);
    CHECK(count_peaks({0, 1, 0, 2, 2, 0, 5}, 0.5) == 2);
}
