#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "bendaid/haptic/mode.hpp"
#include "bendaid/sim/knob_sample.hpp"

namespace gen {

inline bendaid::sim::KnobSample random_sample(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> big(0, 1'000'000'000'000ULL);
    std::uniform_real_distribution<double> angle(-5000.0, 5000.0);
    std::uniform_real_distribution<double> vel(-20000.0, 20000.0);
    std::uniform_real_distribution<double> torque(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(0, 4);
    bendaid::sim::KnobSample s;
    s.seq = big(rng);
    s.t_ms = big(rng);
    s.angle_deg = angle(rng);
    s.velocity_dps = vel(rng);
    s.torque = torque(rng);
    s.mode = bendaid::haptic::kAllModes[static_cast<std::size_t>(mode(rng))];
    return s;
}

inline std::string random_bytes(std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> pick(0, 9);
    static constexpr char kNear[] = "TT,0123456789.-\nMODE,SPRING\r";
    std::string out(len(rng), '\0');
    for (auto& c : out) {
        // Mostly protocol-looking bytes so the parser gets past the tag.
        c = pick(rng) < 7 ? kNear[static_cast<std::size_t>(byte(rng)) % (sizeof kNear - 1)]
                          : static_cast<char>(byte(rng));
    }
    return out;
}

}  // namespace gen
