#pragma once

// Logistic-map dynamics: single step, orbit generation, Lyapunov estimate,
// and the real-to-byte quantizer shared by all keystream constructions.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaoscrypt {

// Working states are kept strictly inside the unit interval so the map can
// never collapse onto the absorbing fixed point at zero.
inline constexpr double kStateFloor = 1e-12;
inline constexpr double kStateCeil = 1.0 - 1e-12;

struct LogisticParams {
    double r = 3.99;   // control parameter, 0 < r <= 4
    double x0 = 0.99;  // initial state, 0 < x0 < 1
};

inline void validate(const LogisticParams& params) {
    if (!(params.r > 0.0 && params.r <= 4.0)) {
        throw std::domain_error("logistic parameter r must be in (0, 4], got " +
                                std::to_string(params.r));
    }
    if (!(params.x0 > 0.0 && params.x0 < 1.0)) {
        throw std::domain_error("logistic state x0 must be in (0, 1), got " +
                                std::to_string(params.x0));
    }
}

// One iteration of x -> r*x*(1-x). Result lies in [0, r/4] for valid inputs.
inline double logistic_step(double x, double r) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("logistic state must be in [0, 1], got " + std::to_string(x));
    }
    if (!(r > 0.0 && r <= 4.0)) {
        throw std::domain_error("logistic parameter r must be in (0, 4], got " +
                                std::to_string(r));
    }
    return r * x * (1.0 - x);
}

// Clamp a would-be state into [kStateFloor, kStateCeil].
inline double guard_unit(double x) {
    if (x < kStateFloor) return kStateFloor;
    if (x > kStateCeil) return kStateCeil;
    return x;
}

// Fractional part, result in [0, 1).
inline double unit_fraction(double v) {
    return v - std::floor(v);
}

// Iterates the map burn_in times from x0, then returns the next n iterates in
// order. The first emitted value is the iterate directly after the burn-in.
inline std::vector<double> orbit(const LogisticParams& params, std::size_t n,
                                 std::size_t burn_in = 0) {
    validate(params);
    if (n == 0) {
        throw std::invalid_argument("orbit length must be at least 1");
    }
    double x = params.x0;
    for (std::size_t i = 0; i < burn_in; ++i) {
        x = logistic_step(x, params.r);
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x = logistic_step(x, params.r);
        out.push_back(x);
    }
    return out;
}

struct LyapunovEstimate {
    double value = 0.0;
    std::size_t skipped = 0;  // iterates that landed exactly on x = 0.5
};

// Average log-derivative (1/n) * sum ln|r*(1-2x_k)| along the orbit after a
// fixed transient. Positive in the chaotic regime. Iterates exactly at
// x = 0.5 contribute ln 0 and are skipped; if every term is skipped the
// orbit sits on a superstable point and the estimate is -infinity.
inline LyapunovEstimate lyapunov_estimate(const LogisticParams& params, std::size_t n) {
    static constexpr std::size_t kTransient = 1000;
    validate(params);
    if (n < 1000) {
        throw std::invalid_argument("lyapunov_estimate requires n >= 1000");
    }
    double x = params.x0;
    for (std::size_t i = 0; i < kTransient; ++i) {
        x = logistic_step(x, params.r);
    }
    LyapunovEstimate est;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x = logistic_step(x, params.r);
        const double deriv = std::fabs(params.r * (1.0 - 2.0 * x));
        if (deriv == 0.0) {
            ++est.skipped;
            continue;
        }
        acc += std::log(deriv);
    }
    if (est.skipped == n) {
        est.value = -std::numeric_limits<double>::infinity();
    } else {
        est.value = acc / static_cast<double>(n - est.skipped);
    }
    return est;
}

// floor(x * levels) clamped to levels-1, for levels in [2, 256].
inline std::uint8_t quantize_levels(double x, int levels) {
    const int k = static_cast<int>(std::floor(x * static_cast<double>(levels)));
    if (k >= levels) return static_cast<std::uint8_t>(levels - 1);
    if (k < 0) return 0;
    return static_cast<std::uint8_t>(k);
}

// Map a unit-interval value to a byte: floor(x*256), with x = 1.0 -> 255.
inline std::uint8_t quantize_byte(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("quantize_byte input must be in [0, 1], got " +
                                std::to_string(x));
    }
    return quantize_levels(x, 256);
}

}  // namespace chaoscrypt
