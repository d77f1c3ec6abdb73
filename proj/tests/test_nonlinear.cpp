#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <bit>
#include <numbers>
#include <random>
#include <set>

#include "chaoscrypt/nonlinear.hpp"

using namespace chaoscrypt;
using Catch::Matchers::WithinAbs;

namespace {

// Hand-rolled oracle for the standard feedback, written against the tap
// definition rather than the library's bit tricks.
bool feedback_oracle(std::uint8_t s) {
    const std::array<int, 8> b = {
        (s >> 0) & 1, (s >> 1) & 1, (s >> 2) & 1, (s >> 3) & 1,
        (s >> 4) & 1, (s >> 5) & 1, (s >> 6) & 1, (s >> 7) & 1,
    };
    return ((b[0] ^ b[2] ^ b[3]) ^ (b[1] & b[7])) != 0;
}

bool alternate_feedback(std::uint8_t s) {
    return ((s ^ (s >> 1)) & 1) != 0;  // b0 ^ b1, linear stand-in
}

}  // namespace

TEST_CASE("sine_transform evaluates A*sin(wt+phi)", "[nonlinear]") {
    CHECK(sine_transform(0.0, {1.0, 1.0, 0.0}) == 0.0);
    CHECK_THAT(sine_transform(1.0, {2.0, std::numbers::pi / 2.0, 0.0}), WithinAbs(2.0, 1e-12));
    CHECK_THAT(sine_transform(0.5, {1.0, kTwoPi, 0.0}), WithinAbs(0.0, 1e-12));
    CHECK_THROWS_AS(sine_transform(0.0, {-1.0, 1.0, 0.0}), std::invalid_argument);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ts(-10.0, 10.0);
    std::uniform_real_distribution<double> as(0.1, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const SineParams p{as(rng), ts(rng), ts(rng)};
        REQUIRE(std::fabs(sine_transform(ts(rng), p)) <= p.amplitude + 1e-12);
    }
}

TEST_CASE("sine_unit maps [0,1] into [0,1]", "[nonlinear]") {
    CHECK(sine_unit(0.0) == 0.5);
    CHECK_THAT(sine_unit(0.25), WithinAbs(1.0, 1e-12));
    CHECK_THAT(sine_unit(0.75), WithinAbs(0.0, 1e-12));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ws(0.1, 20.0);
    std::uniform_real_distribution<double> ps(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 5000; ++i) {
        const double v = sine_unit(xs(rng), {1.0, ws(rng), ps(rng)});
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
    }
}

TEST_CASE("nlfsr_step shifts right and inserts the feedback bit", "[nonlinear]") {
    SECTION("all-zero state is absorbing") {
        const auto step = nlfsr_step({0x00});
        CHECK(step.state.bits == 0x00);
        CHECK(step.output == false);
    }
    SECTION("seed 0x01 hand trace") {
        const auto step = nlfsr_step({0x01});
        CHECK(step.state.bits == 0x80);
        CHECK(step.output == true);
    }
    SECTION("feedback matches the tap oracle on every state") {
        for (int s = 0; s < 256; ++s) {
            const auto bits = static_cast<std::uint8_t>(s);
            const auto step = nlfsr_step({bits});
            const std::uint8_t expected = static_cast<std::uint8_t>(
                (bits >> 1) | (feedback_oracle(bits) ? 0x80 : 0x00));
            REQUIRE(step.state.bits == expected);
            REQUIRE(step.output == ((bits & 1) != 0));
        }
    }
}

TEST_CASE("nlfsr next-state map is a permutation", "[nonlinear]") {
    std::set<std::uint8_t> images;
    for (int s = 0; s < 256; ++s) {
        images.insert(nlfsr_step({static_cast<std::uint8_t>(s)}).state.bits);
    }
    CHECK(images.size() == 256);
}

TEST_CASE("nlfsr cycle from seed 0x01 has period 188", "[nonlinear]") {
    // exhaustive traversal; every state on the cycle is nonzero
    NlfsrState state{0x01};
    std::size_t period = 0;
    do {
        REQUIRE(state.bits != 0x00);
        state = nlfsr_step(state).state;
        ++period;
        REQUIRE(period <= 256);
    } while (state.bits != 0x01);
    CHECK(period == 188);
}

TEST_CASE("no linear tap mask reproduces the feedback", "[nonlinear]") {
    for (int mask = 0; mask < 256; ++mask) {
        bool matches_everywhere = true;
        for (int s = 0; s < 256; ++s) {
            const bool linear = (std::popcount(static_cast<unsigned>(s & mask)) & 1) != 0;
            if (linear != nlfsr_standard_feedback(static_cast<std::uint8_t>(s))) {
                matches_everywhere = false;
                break;
            }
        }
        REQUIRE_FALSE(matches_everywhere);
    }
}

TEST_CASE("nlfsr_byte assembles eight output bits LSB first", "[nonlinear]") {
    SECTION("zero state") {
        const auto byte = nlfsr_byte({0x00});
        CHECK(byte.state.bits == 0x00);
        CHECK(byte.output == 0x00);
    }
    SECTION("seed 0x01 equals the step-by-step oracle") {
        NlfsrState state{0x01};
        std::uint8_t expected = 0;
        for (int i = 0; i < 8; ++i) {
            const auto step = nlfsr_step(state);
            state = step.state;
            if (step.output) expected |= static_cast<std::uint8_t>(1u << i);
        }
        const auto byte = nlfsr_byte({0x01});
        CHECK(byte.output == expected);
        CHECK(byte.state == state);
        // frozen values from the trace above
        CHECK(byte.output == 0x01);
        CHECK(byte.state.bits == 0xe1);
    }
    SECTION("two bytes equal sixteen single steps") {
        NlfsrState state{0x5a};
        for (int i = 0; i < 16; ++i) state = nlfsr_step(state).state;
        auto byte = nlfsr_byte({0x5a});
        byte = nlfsr_byte(byte.state);
        CHECK(byte.state == state);
    }
}

TEST_CASE("nlfsr feedback is swappable", "[nonlinear]") {
    const auto step = nlfsr_step({0x03}, alternate_feedback);
    // b0 ^ b1 = 0 for state 0x03, so the inserted bit is 0
    CHECK(step.state.bits == 0x01);
    CHECK(step.output == true);
    CHECK(nlfsr_step({0x03}).state.bits != step.state.bits);
}
