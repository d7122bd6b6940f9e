#include <doctest.h>

#include <cstdio>
#include <random>

#include "bendaid/protocol/codec.hpp"
#include "bendaid/protocol/decoder.hpp"
#include "support/generators.hpp"

using namespace bendaid;
using namespace bendaid::protocol;

namespace {

std::string printf4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    std::string s = buf;
    return s == "-0.0000" ? "0.0000" : s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("telemetry grammar instance") {
    sim::KnobSample s{1, 1, 0.0, 0.0, 0.0, haptic::Mode::Smooth};
    CHECK(encode_telemetry(s) == "TT,1,1,0.0000,0.0000,0.0000,SMOOTH\n");
    s.angle_deg = -12.34567;
    CHECK(split(encode_telemetry(s))[3] == "-12.3457");
    s.angle_deg = -0.00001;
    CHECK(split(encode_telemetry(s))[3] == "0.0000");
}

TEST_CASE("float fields agree with printf rounding") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20000; ++i) {
        const auto s = gen::random_sample(rng);
        std::string line = encode_telemetry(s);
        line.pop_back();
        const auto f = split(line);
        REQUIRE(f.size() == 7);
        REQUIRE(f[3] == printf4(s.angle_deg));
        REQUIRE(f[4] == printf4(s.velocity_dps));
        REQUIRE(f[5] == printf4(s.torque));
    }
}

TEST_CASE("telemetry round trip is exact at wire precision") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20000; ++i) {
        const auto s = gen::random_sample(rng);
        const auto line = encode_telemetry(s);
        REQUIRE(line.size() <= kMaxLineBytes);
        const auto back = decode_telemetry(line).sample;
        REQUIRE(back == quantized(s));
        REQUIRE(encode_telemetry(back) == line);
    }
}

TEST_CASE("decode is strict") {
    CHECK_NOTHROW(decode_telemetry("TT,1,1,0.0000,0.0000,0.0000,SMOOTH"));
    CHECK_NOTHROW(decode_telemetry("TT,1,1,0.0000,0.0000,0.0000,SMOOTH\r\n"));
    for (const char* bad : {"TT,1,1,0.0000,0.0000,0.0000,BOGUS\n", "TT,1,1,0.000,0.0000,0.0000,SMOOTH\n",
                            "TT,01,1,0.0000,0.0000,0.0000,SMOOTH\n", "TT,1,1,-0.0000,0.0000,0.0000,SMOOTH\n",
                            "TT,1,1,0.0000,0.0000,SMOOTH\n", "TT,1,1,+1.0000,0.0000,0.0000,SMOOTH\n",
                            "TT,1,1,0.0000,0.0000,0.0000,smooth\n", "TT,-1,1,0.0000,0.0000,0.0000,SMOOTH\n",
                            "XX,1,1,0.0000,0.0000,0.0000,SMOOTH\n", ""}) {
        CHECK_THROWS_AS(decode_telemetry(bad), ProtocolError);
    }
}

TEST_CASE("encode rejects values that cannot be printed") {
    sim::KnobSample s;
    s.angle_deg = NAN;
    CHECK_THROWS_AS(encode_telemetry(s), ProtocolError);
    s.angle_deg = 1e13;
    CHECK_THROWS_AS(encode_telemetry(s), ProtocolError);
}

TEST_CASE("commands") {
    CHECK(encode_command(ModeCommand{haptic::Mode::Spring}) == "MODE,SPRING\n");
    CHECK(std::get<ModeCommand>(parse_command("MODE,SPRING\n")).mode == haptic::Mode::Spring);
    const auto p = std::get<ParamCommand>(parse_command("PARAM,spring_constant,0.0111\n"));
    CHECK(p.key == "spring_constant");
    CHECK(p.value == 0.0111);
    CHECK(encode_command(ZeroCommand{}) == "ZERO\n");
    CHECK(std::get<PingCommand>(parse_command("PING,77")).nonce == 77);

    try {
        parse_command("MODE,MAGNET\n");
        FAIL("expected ProtocolError");
    } catch (const ProtocolError& e) {
        CHECK(e.token() == "MAGNET");
    }
    try {
        parse_command("PARAM,gravity,1\n");
        FAIL("expected ProtocolError");
    } catch (const ProtocolError& e) {
        CHECK(e.token() == "gravity");
    }
    CHECK_THROWS_AS(parse_command("PARAM,spring_constant,abc\n"), ProtocolError);
    CHECK_THROWS_AS(parse_command("ZERO,1\n"), ProtocolError);
}

TEST_CASE("command round trip") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> v(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const ParamCommand c{"detent_steepness", v(rng)};
        REQUIRE(std::get<ParamCommand>(parse_command(encode_command(c))) == c);
    }
    for (auto m : haptic::kAllModes) {
        const CommandFrame c = ModeCommand{m};
        CHECK(parse_command(encode_command(c)) == c);
    }
}

TEST_CASE("decoder: byte-at-a-time reassembly") {
    const std::string line = "TT,1,1,0.0000,0.0000,0.0000,SMOOTH\n";
    StreamDecoder d;
    std::vector<Frame> got;
    for (char c : line) d.feed(std::string_view(&c, 1), got);
    CHECK(got.size() == 1);
    CHECK(d.stats().frames_ok == 1);
}

TEST_CASE("decoder: malformed and over-long lines are counted") {
    StreamDecoder d;
    auto out = d.feed("TT,1,1,0.0000,0.0000,0.0000,BOGUS\n\n");
    CHECK(out.empty());
    CHECK(d.stats().frames_dropped == 1);

    std::string longline(300, '7');
    out = d.feed(longline + "\nZERO\n");
    CHECK(out.size() == 1);
    CHECK(d.stats().frames_dropped == 2);
    CHECK(d.buffered() < kMaxLineBytes);
}

TEST_CASE("decoder: chunking invariance") {
    std::mt19937_64 rng(21);
    std::string stream;
    for (int i = 0; i < 300; ++i) {
        stream += encode_telemetry(gen::random_sample(rng));
        if (i % 7 == 0) stream += gen::random_bytes(rng, 40) + "\n";
        if (i % 11 == 0) stream += encode_command(ModeCommand{haptic::Mode::Detent});
    }
    StreamDecoder whole;
    const auto want = whole.feed(stream);
    for (int trial = 0; trial < 200; ++trial) {
        StreamDecoder d;
        std::vector<Frame> got;
        std::uniform_int_distribution<std::size_t> len(1, 200);
        for (std::size_t pos = 0; pos < stream.size();) {
            const auto n = std::min(len(rng), stream.size() - pos);
            d.feed(std::string_view(stream).substr(pos, n), got);
            pos += n;
        }
        REQUIRE(got == want);
        REQUIRE(d.stats().frames_dropped == whole.stats().frames_dropped);
    }
}

TEST_CASE("decoder: valid frames survive interleaved garbage") {
    std::mt19937_64 rng(8);
    StreamDecoder d;
    std::vector<Frame> got;
    std::vector<Frame> want;
    for (int i = 0; i < 2000; ++i) {
        // Garbage always ends in a newline so it cannot swallow the next frame.
        d.feed(gen::random_bytes(rng, 60) + "\n", got);
        const auto s = gen::random_sample(rng);
        want.emplace_back(TelemetryFrame{quantized(s)});
        d.feed(encode_telemetry(s), got);
    }
    std::vector<Frame> telemetry;
    for (auto& f : got) {
        if (std::holds_alternative<TelemetryFrame>(f)) telemetry.push_back(f);
    }
    // Garbage can itself form a valid frame by chance; every real frame must
    // appear, in order.
    std::size_t j = 0;
    for (const auto& f : telemetry) {
        if (j < want.size() && f == want[j]) ++j;
    }
    CHECK(j == want.size());
}

TEST_CASE("decoder fuzz: arbitrary chunks never throw") {
    std::mt19937_64 rng(1234);
    StreamDecoder d;
    std::vector<Frame> sink;
    for (int i = 0; i < 100000; ++i) {
        REQUIRE_NOTHROW(d.feed(gen::random_bytes(rng, 64), sink));
        REQUIRE(d.buffered() <= StreamDecoder::kBufferLimit);
        sink.clear();
    }
}
