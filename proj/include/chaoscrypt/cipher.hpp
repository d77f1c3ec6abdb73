#pragma once

// The three stream-cipher schemes behind one encrypt/decrypt interface.
//
// All three derive their keystream from a logistic map whose control
// parameter r is the secret key. They differ in how the keystream is shaped
// and whether ciphertext is fed back into the chaotic state:
//
//   Logistic        k = quantize(sine_unit(x));            weak feedback x += c/65536
//   Nlfsr           k = nlfsr_byte ^ quantize(x);          no feedback (synchronous)
//   ModifiedNlfsr   keystream as Nlfsr, plus ciphertext chaining y = p ^ prev_c
//                   and strong feedback x += c/256
//
// Feedback perturbations pass through frac() and are clamped back into the
// open unit interval, so decryption can mirror the exact state evolution from
// the received ciphertext.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscrypt/chaos.hpp"
#include "chaoscrypt/nonlinear.hpp"

namespace chaoscrypt {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

enum class SchemeId { Logistic, Nlfsr, ModifiedNlfsr };

inline std::string_view scheme_name(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::Logistic: return "logistic";
        case SchemeId::Nlfsr: return "nlfsr";
        case SchemeId::ModifiedNlfsr: return "mnlfsr";
    }
    return "unknown";
}

inline std::optional<SchemeId> parse_scheme(std::string_view name) {
    if (name == "logistic") return SchemeId::Logistic;
    if (name == "nlfsr") return SchemeId::Nlfsr;
    if (name == "mnlfsr") return SchemeId::ModifiedNlfsr;
    return std::nullopt;
}

class KeyOutOfRange : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// The secret parameter r, quantized to the grid 3.57 + k * 0.0001 spanning
// the chaotic regime [3.57, 4.0]. Keys that round to the same grid point are
// the same key.
class SchemeKey {
  public:
    static constexpr double kMin = 3.57;
    static constexpr double kMax = 4.0;
    static constexpr double kGridStep = 1e-4;
    static constexpr long kMaxIndex = 4300;  // (4.0 - 3.57) / 0.0001

    explicit SchemeKey(double r) : index_(std::llround((r - kMin) / kGridStep)) {
        if (index_ < 0 || index_ > kMaxIndex) {
            throw KeyOutOfRange("key " + std::to_string(r) + " outside [3.57, 4.0]");
        }
    }

    static SchemeKey from_index(long index) {
        if (index < 0 || index > kMaxIndex) {
            throw KeyOutOfRange("key grid index " + std::to_string(index) +
                                " outside [0, 4300]");
        }
        SchemeKey key;
        key.index_ = index;
        return key;
    }

    double value() const { return kMin + static_cast<double>(index_) * kGridStep; }
    long index() const { return index_; }

    bool operator==(const SchemeKey&) const = default;
    auto operator<=>(const SchemeKey&) const = default;

  private:
    SchemeKey() : index_(0) {}
    long index_;
};

inline SchemeKey make_key(double r) {
    return SchemeKey(r);
}

// Tunable scheme defaults. The defaults below define the reference keystream;
// they can be overridden through the CLI config file.
struct CipherParams {
    double sine_omega = kTwoPi;
    double sine_phi = 0.0;
    NlfsrFeedback nlfsr_feedback = nlfsr_standard_feedback;
    std::size_t burn_in = 64;  // map iterations discarded before keystream use
    double x0 = 0.99;          // public initial state; the key is r alone
    int quant_levels = 256;
};

inline void validate(const CipherParams& params) {
    if (!(params.x0 > 0.0 && params.x0 < 1.0)) {
        throw std::domain_error("cipher x0 must be in (0, 1), got " + std::to_string(params.x0));
    }
    if (params.quant_levels < 2 || params.quant_levels > 256) {
        throw std::domain_error("quant_levels must be in [2, 256], got " +
                                std::to_string(params.quant_levels));
    }
    if (params.nlfsr_feedback == nullptr) {
        throw std::domain_error("nlfsr feedback function must be set");
    }
}

// Per-message evolving state.
struct CipherState {
    double x = 0.0;            // chaotic state, kept in [1e-12, 1 - 1e-12]
    NlfsrState nlfsr;          // shift register for the NLFSR-based schemes
    std::uint8_t prev_c = 0;   // previous ciphertext byte (key-derived IV at start)
    std::uint8_t y = 0;        // most recent intermediate encrypted value
};

// Burn in the map from the public x0 under the key, then derive the register
// seed and chaining IV from the settled state. A zero register seed is
// replaced by 0x01 so the NLFSR never starts in its absorbing state. The
// state layout is shared by all schemes.
inline CipherState init_state(SchemeId /*scheme*/, const SchemeKey& key,
                              const CipherParams& params = {}) {
    validate(params);
    const double r = key.value();
    double x = params.x0;
    for (std::size_t i = 0; i < params.burn_in; ++i) {
        x = guard_unit(logistic_step(x, r));
    }
    CipherState state;
    state.x = x;
    const std::uint8_t seed = quantize_byte(x);
    state.nlfsr.bits = seed != 0 ? seed : std::uint8_t{0x01};
    state.prev_c = seed;
    state.y = 0;
    return state;
}

// Streaming cipher core. Encryption and decryption advance the same keystream;
// feedback is driven by the ciphertext byte on both sides, which keeps the
// two state evolutions identical.
class StreamCipher {
  public:
    StreamCipher(SchemeId scheme, const SchemeKey& key, const CipherParams& params = {})
        : scheme_(scheme),
          r_(key.value()),
          params_(params),
          state_(init_state(scheme, key, params)) {}

    std::uint8_t encrypt_byte(std::uint8_t p) {
        const std::uint8_t k = next_keystream_byte();
        std::uint8_t c = 0;
        switch (scheme_) {
            case SchemeId::Logistic:
                c = p ^ k;
                state_.y = c;
                feed_back(c, kWeakFeedbackScale);
                break;
            case SchemeId::Nlfsr:
                c = p ^ k;
                state_.y = c;
                break;
            case SchemeId::ModifiedNlfsr: {
                const std::uint8_t y = p ^ state_.prev_c;
                c = y ^ k;
                state_.y = y;
                feed_back(c, kStrongFeedbackScale);
                state_.prev_c = c;
                break;
            }
        }
        return c;
    }

    std::uint8_t decrypt_byte(std::uint8_t c) {
        const std::uint8_t k = next_keystream_byte();
        std::uint8_t p = 0;
        switch (scheme_) {
            case SchemeId::Logistic:
                p = c ^ k;
                state_.y = c;
                feed_back(c, kWeakFeedbackScale);
                break;
            case SchemeId::Nlfsr:
                p = c ^ k;
                state_.y = c;
                break;
            case SchemeId::ModifiedNlfsr: {
                const std::uint8_t y = c ^ k;
                p = y ^ state_.prev_c;
                state_.y = y;
                feed_back(c, kStrongFeedbackScale);
                state_.prev_c = c;
                break;
            }
        }
        return p;
    }

    const CipherState& state() const { return state_; }

  private:
    static constexpr double kWeakFeedbackScale = 65536.0;
    static constexpr double kStrongFeedbackScale = 256.0;

    std::uint8_t next_keystream_byte() {
        state_.x = guard_unit(logistic_step(state_.x, r_));
        if (scheme_ == SchemeId::Logistic) {
            const SineParams sine{1.0, params_.sine_omega, params_.sine_phi};
            return quantize_levels(sine_unit(state_.x, sine), params_.quant_levels);
        }
        const NlfsrByte nb = nlfsr_byte(state_.nlfsr, params_.nlfsr_feedback);
        state_.nlfsr = nb.state;
        return static_cast<std::uint8_t>(nb.output ^
                                         quantize_levels(state_.x, params_.quant_levels));
    }

    void feed_back(std::uint8_t c, double scale) {
        state_.x = guard_unit(unit_fraction(state_.x + static_cast<double>(c) / scale));
    }

    SchemeId scheme_;
    double r_;
    CipherParams params_;
    CipherState state_;
};

inline Bytes encrypt(SchemeId scheme, const SchemeKey& key, ByteView plaintext,
                     const CipherParams& params = {}) {
    StreamCipher cipher(scheme, key, params);
    Bytes out;
    out.reserve(plaintext.size());
    for (const std::uint8_t p : plaintext) {
        out.push_back(cipher.encrypt_byte(p));
    }
    return out;
}

inline Bytes decrypt(SchemeId scheme, const SchemeKey& key, ByteView ciphertext,
                     const CipherParams& params = {}) {
    StreamCipher cipher(scheme, key, params);
    Bytes out;
    out.reserve(ciphertext.size());
    for (const std::uint8_t c : ciphertext) {
        out.push_back(cipher.decrypt_byte(c));
    }
    return out;
}

// First n ciphertext bytes only; used by the key-search and identifiability
// sweeps where full messages would be wasted work.
inline Bytes encrypt_prefix(SchemeId scheme, const SchemeKey& key, ByteView plaintext,
                            std::size_t n, const CipherParams& params = {}) {
    if (n > plaintext.size()) {
        throw std::invalid_argument("prefix length exceeds plaintext length");
    }
    StreamCipher cipher(scheme, key, params);
    Bytes out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(cipher.encrypt_byte(plaintext[i]));
    }
    return out;
}

}  // namespace chaoscrypt
