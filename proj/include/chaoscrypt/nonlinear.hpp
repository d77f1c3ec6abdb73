#pragma once

// Auxiliary nonlinear primitives: the sinusoid used for keystream shaping and
// an 8-bit nonlinear feedback shift register.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chaoscrypt {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct SineParams {
    double amplitude = 1.0;    // peak deviation, must be positive
    double omega = kTwoPi;     // angular frequency, radians per unit input
    double phi = 0.0;          // phase, radians
};

inline void validate(const SineParams& params) {
    if (!(params.amplitude > 0.0)) {
        throw std::invalid_argument("sine amplitude must be positive, got " +
                                    std::to_string(params.amplitude));
    }
}

// y(t) = A * sin(omega*t + phi); |result| <= A.
inline double sine_transform(double t, const SineParams& params) {
    validate(params);
    return params.amplitude * std::sin(params.omega * t + params.phi);
}

// Unit-normalized sinusoid (sin(omega*x + phi) + 1) / 2, mapping [0,1] into
// [0,1] regardless of omega and phi. Amplitude is fixed to 1 here.
inline double sine_unit(double x, const SineParams& params = {}) {
    return (std::sin(params.omega * x + params.phi) + 1.0) * 0.5;
}

// --- 8-bit NLFSR -------------------------------------------------------------
//
// Register bits b7..b0 live in one byte with b0 as the least significant bit
// and the output end. Each step emits b0, shifts the register right one
// position, and inserts the feedback bit as the new b7.
//
// The standard feedback is f = b0 ^ b2 ^ b3 ^ (b1 & b7). The AND term makes it
// nonlinear: no XOR-only tap mask reproduces its next-state table. The
// next-state map is a permutation of all 256 states; from seed 0x01 the
// register traverses a cycle of length 188. The all-zero state is fixed and
// must be avoided by the seeding rule.

struct NlfsrState {
    std::uint8_t bits = 0x01;

    bool operator==(const NlfsrState&) const = default;
};

using NlfsrFeedback = bool (*)(std::uint8_t bits);

inline bool nlfsr_standard_feedback(std::uint8_t bits) {
    const std::uint8_t b0 = bits & 1u;
    const std::uint8_t b1 = (bits >> 1) & 1u;
    const std::uint8_t b2 = (bits >> 2) & 1u;
    const std::uint8_t b3 = (bits >> 3) & 1u;
    const std::uint8_t b7 = (bits >> 7) & 1u;
    return ((b0 ^ b2 ^ b3) ^ (b1 & b7)) != 0;
}

struct NlfsrStep {
    NlfsrState state;
    bool output = false;
};

inline NlfsrStep nlfsr_step(NlfsrState state, NlfsrFeedback feedback = nlfsr_standard_feedback) {
    const bool out = (state.bits & 1u) != 0;
    const bool fb = feedback(state.bits);
    NlfsrState next;
    next.bits = static_cast<std::uint8_t>((state.bits >> 1) | (fb ? 0x80u : 0x00u));
    return {next, out};
}

struct NlfsrByte {
    NlfsrState state;
    std::uint8_t output = 0;
};

// Eight steps; the first output bit becomes the byte's least significant bit.
inline NlfsrByte nlfsr_byte(NlfsrState state, NlfsrFeedback feedback = nlfsr_standard_feedback) {
    std::uint8_t value = 0;
    for (int i = 0; i < 8; ++i) {
        const NlfsrStep step = nlfsr_step(state, feedback);
        state = step.state;
        if (step.output) {
            value = static_cast<std::uint8_t>(value | (1u << i));
        }
    }
    return {state, value};
}

}  // namespace chaoscrypt
