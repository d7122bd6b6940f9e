#include <doctest.h>

#include <cmath>
#include <random>

#include "bendaid/haptic/session.hpp"
#include "bendaid/haptic/torque.hpp"

using namespace bendaid::haptic;

namespace {

HapticModeConfig with_mode(Mode m) {
    HapticModeConfig c;
    c.mode = m;
    return c;
}

// Direct transcription of the detent rule, kept separate from the library.
double detent_oracle(double angle, double vel, double spacing, double k, double click, double gain,
                     double eps) {
    if (std::fabs(vel) < eps) return 0.0;
    const double s = vel > 0 ? 1.0 : -1.0;
    const double x = s * angle / spacing;
    const double f = x - std::floor(x);
    if (f < click) return s * gain;
    const double fp = (f - click) / (1.0 - click);
    return -s * (std::exp(k * fp) - 1.0) / (std::exp(k) - 1.0);
}

}  // namespace

TEST_CASE("mode names round trip and reject unknown names") {
    for (Mode m : kAllModes) CHECK(parse_mode_name(mode_name(m)) == m);
    CHECK(mode_name(Mode::Spring) == "SPRING");
    CHECK_FALSE(parse_mode_name("MAGNET").has_value());
    CHECK_FALSE(parse_mode_name("").has_value());
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(HapticModeConfig{}.validate());
    auto bad = [](auto mutate) {
        HapticModeConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](auto& c) { c.detent_spacing_deg = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto& c) { c.detent_steepness = -1; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto& c) { c.detent_click_fraction = 0.5; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto& c) { c.spring_constant = NAN; }).validate(), ConfigError);
    CHECK_NOTHROW(bad([](auto& c) { c.detent_click_fraction = 0.0; }).validate());
}

TEST_CASE("with_param patches one field and validates") {
    auto c = with_param({}, "spring_constant", 0.02);
    CHECK(c.spring_constant == 0.02);
    CHECK(get_param(c, "spring_constant") == 0.02);
    CHECK_THROWS_AS(with_param({}, "nope", 1.0), ConfigError);
    CHECK_THROWS_AS(with_param({}, "detent_spacing_deg", 0.0), ConfigError);
    for (auto key : param_keys()) CHECK(is_param_key(key));
}

TEST_CASE("smooth renders nothing") {
    CHECK(compute_torque(with_mode(Mode::Smooth), {123.0, -400.0, 1.0}).torque == 0.0);
}

TEST_CASE("spring examples") {
    const auto c = with_mode(Mode::Spring);
    CHECK(compute_torque(c, {45.0, 0, 0}).torque == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(compute_torque(c, {-45.0, 0, 0}).torque == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(compute_torque(c, {180.0, 0, 0}).torque == -1.0);
    CHECK(torque_spring(c, {180.0, 0, 0}) == doctest::Approx(-2.0));
}

TEST_CASE("detent examples") {
    auto c = with_mode(Mode::Detent);
    CHECK(compute_torque(c, {1.0, 10.0, 0}).torque == doctest::Approx(0.3));
    CHECK(compute_torque(c, {22.5, 0.5, 0}).torque == 0.0);
    // f = 0.5 with click disabled: -(e^2 - 1)/(e^4 - 1) = -1/(e^2 + 1)
    c.detent_click_fraction = 0.0;
    CHECK(compute_torque(c, {22.5, 10.0, 0}).torque ==
          doctest::Approx(-1.0 / (std::exp(2.0) + 1.0)).epsilon(1e-14));
    CHECK(compute_torque(c, {22.5, 10.0, 0}).torque == doctest::Approx(-0.119203).epsilon(1e-6));
    c.detent_click_fraction = 0.05;
    CHECK(compute_torque(c, {22.5, 10.0, 0}).torque == doctest::Approx(-0.105429).epsilon(1e-6));
}

TEST_CASE("detent matches the oracle across random states") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-720.0, 720.0), vel(-300.0, 300.0);
    HapticModeConfig c = with_mode(Mode::Detent);
    for (int i = 0; i < 20000; ++i) {
        const double a = ang(rng), v = vel(rng);
        const double want = detent_oracle(a, v, c.detent_spacing_deg, c.detent_steepness,
                                          c.detent_click_fraction, c.detent_click_gain,
                                          c.rest_velocity_eps_dps);
        REQUIRE(torque_detent(c, {a, v, 0}) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("detent progress is direction aware") {
    CHECK(detent_progress(10.0, 45.0, 1.0) == doctest::Approx(10.0 / 45.0));
    CHECK(detent_progress(10.0, 45.0, -1.0) == doctest::Approx(35.0 / 45.0));
    CHECK(detent_progress(45.0, 45.0, 1.0) == 0.0);
    CHECK(detent_progress(-90.0, 45.0, -1.0) == 0.0);
}

TEST_CASE("free and vibrato") {
    auto c = with_mode(Mode::Free);
    CHECK(compute_torque(c, {0, 0, 0}).torque == doctest::Approx(0.2));
    c = with_mode(Mode::Vibrato);
    CHECK(compute_torque(c, {0, 0, 0.05}).torque == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(compute_torque(c, {0, 0, 0.0}).torque == doctest::Approx(0.0).scale(1.0));
    CHECK(compute_torque(c, {0, 0, 0.15}).torque == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("clamp handles non-finite input") {
    CHECK(clamp_torque(5.0) == 1.0);
    CHECK(clamp_torque(-5.0) == -1.0);
    CHECK(clamp_torque(0.25) == 0.25);
    CHECK(clamp_torque(NAN) == 0.0);
}

TEST_CASE("zero-point reset holds torque until the knob moves") {
    EngineSession s;
    s = set_mode(s, with_mode(Mode::Spring), 30.0);
    CHECK(s.zero_offset_deg == 30.0);
    auto r = render(s, 30.0, 0.0, 0.0);
    CHECK(r.reported.angle_deg == 0.0);
    CHECK(r.command.torque == 0.0);
    r = render(s, 30.5, 0.0, 0.0);  // below the motion threshold
    CHECK(r.command.torque == 0.0);
    CHECK_FALSE(s.interacted_since_reset);
    r = render(s, 39.0, 0.0, 0.0);
    CHECK(s.interacted_since_reset);
    CHECK(r.reported.angle_deg == doctest::Approx(9.0));
    CHECK(r.command.torque == doctest::Approx(-0.1));

    s = reset_zero(s, 39.0);
    CHECK(s.active_config.mode == Mode::Spring);
    CHECK(render(s, 39.0, 0.0, 0.0).command.torque == 0.0);
}

TEST_CASE("free mode stays silent after a reset until touched") {
    EngineSession s = set_mode({}, with_mode(Mode::Free), -12.0);
    CHECK(render(s, -12.0, 0.0, 0.0).command.torque == 0.0);
    CHECK(render(s, -12.0, 5.0, 0.0).command.torque == doctest::Approx(0.2));
}
