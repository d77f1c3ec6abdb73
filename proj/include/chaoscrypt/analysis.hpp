#pragma once

// Cryptanalysis toolkit: avalanche/sensitivity metrics, key-grid enumeration,
// known-plaintext brute force, and the output-injectivity (identifiability)
// test. All sweeps walk the key grid in ascending order, so results are
// deterministic regardless of how callers schedule them.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chaoscrypt/cipher.hpp"
#include "chaoscrypt/hex.hpp"

namespace chaoscrypt {

// Scaled Hamming distance: 100 * differing_bits / (8 * length).
inline double bit_difference_percent(ByteView a, ByteView b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("bit_difference_percent requires equal lengths");
    }
    if (a.empty()) {
        throw std::invalid_argument("bit_difference_percent requires non-empty inputs");
    }
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(a[i] ^ b[i])));
    }
    return 100.0 * static_cast<double>(diff) / (8.0 * static_cast<double>(a.size()));
}

// Which single bit to invert for a sensitivity probe.
struct FlipSpec {
    std::size_t byte_index = 0;
    unsigned bit_index = 0;  // 0..7, 0 = least significant
};

inline Bytes flip_bit(ByteView data, const FlipSpec& flip) {
    if (flip.byte_index >= data.size() || flip.bit_index > 7) {
        throw std::invalid_argument("flip position outside plaintext");
    }
    Bytes out(data.begin(), data.end());
    out[flip.byte_index] ^= static_cast<std::uint8_t>(1u << flip.bit_index);
    return out;
}

// Percentage of ciphertext bits that change when one plaintext bit flips.
inline double plaintext_sensitivity(SchemeId scheme, const SchemeKey& key, ByteView p,
                                    const FlipSpec& flip, const CipherParams& params = {}) {
    const Bytes flipped = flip_bit(p, flip);
    const Bytes c1 = encrypt(scheme, key, p, params);
    const Bytes c2 = encrypt(scheme, key, flipped, params);
    return bit_difference_percent(c1, c2);
}

// Classical avalanche figure: mean over every single-bit flip of p.
inline double plaintext_sensitivity_mean(SchemeId scheme, const SchemeKey& key, ByteView p,
                                         const CipherParams& params = {}) {
    if (p.empty()) {
        throw std::invalid_argument("plaintext_sensitivity_mean requires non-empty input");
    }
    const Bytes base = encrypt(scheme, key, p, params);
    double total = 0.0;
    for (std::size_t byte = 0; byte < p.size(); ++byte) {
        for (unsigned bit = 0; bit < 8; ++bit) {
            const Bytes c2 = encrypt(scheme, key, flip_bit(p, {byte, bit}), params);
            total += bit_difference_percent(base, c2);
        }
    }
    return total / (8.0 * static_cast<double>(p.size()));
}

// Percentage of ciphertext bits that change under the neighbouring grid key.
// The neighbour is key + delta, or key - delta when the upper one leaves the
// key space.
inline double key_sensitivity(SchemeId scheme, const SchemeKey& key, ByteView p,
                              double delta = SchemeKey::kGridStep,
                              const CipherParams& params = {}) {
    const double r = key.value();
    SchemeKey neighbour = key;
    bool found = false;
    for (const double candidate : {r + delta, r - delta}) {
        if (candidate >= SchemeKey::kMin - 1e-9 && candidate <= SchemeKey::kMax + 1e-9) {
            neighbour = make_key(candidate);
            found = true;
            break;
        }
    }
    if (!found) {
        throw std::invalid_argument("no valid neighbour key at delta " + std::to_string(delta));
    }
    const Bytes c1 = encrypt(scheme, key, p, params);
    const Bytes c2 = encrypt(scheme, neighbour, p, params);
    return bit_difference_percent(c1, c2);
}

// A closed interval of keys with a sweep increment. The increment must be a
// whole number of grid steps and must divide the span, so hi is reached
// exactly and every enumerated point quantizes to a distinct key.
struct KeyDomain {
    double lo;
    double hi;
    double step;

    explicit KeyDomain(double lo_, double hi_, double step_ = SchemeKey::kGridStep)
        : lo(lo_), hi(hi_), step(step_) {
        static constexpr double kTol = 1e-9;
        if (!(lo >= SchemeKey::kMin - kTol && lo < hi && hi <= SchemeKey::kMax + kTol)) {
            throw std::invalid_argument("key domain must satisfy 3.57 <= lo < hi <= 4.0");
        }
        if (!(step > 0.0)) {
            throw std::invalid_argument("key domain step must be positive");
        }
        const double grid_ratio = step / SchemeKey::kGridStep;
        if (std::llround(grid_ratio) < 1 ||
            std::fabs(grid_ratio - std::round(grid_ratio)) > kTol) {
            throw std::invalid_argument("key domain step must be a multiple of 0.0001");
        }
        const double span_ratio = (hi - lo) / step;
        if (std::fabs(span_ratio - std::round(span_ratio)) > kTol) {
            throw std::invalid_argument("key domain span must be a whole number of steps");
        }
    }

    std::size_t count() const {
        return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    }
};

// Keys lo, lo+step, ..., hi inclusive, each snapped to the 1e-4 grid.
inline std::vector<SchemeKey> enumerate_keys(const KeyDomain& domain) {
    const std::size_t n = domain.count();
    std::vector<SchemeKey> keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        keys.push_back(make_key(domain.lo + static_cast<double>(i) * domain.step));
    }
    return keys;
}

// The width-wide window centred on the key, shifted (never truncated) so it
// stays inside the key space. Bounds are snapped to the key grid.
inline KeyDomain key_domain(const SchemeKey& key, double width = 0.20) {
    static constexpr double kSpaceWidth = SchemeKey::kMax - SchemeKey::kMin;
    if (!(width >= 2.0 * SchemeKey::kGridStep && width <= kSpaceWidth + 1e-12)) {
        throw std::invalid_argument("domain width must be in [0.0002, 0.43]");
    }
    double lo = key.value() - width / 2.0;
    double hi = key.value() + width / 2.0;
    if (lo < SchemeKey::kMin) {
        hi += SchemeKey::kMin - lo;
        lo = SchemeKey::kMin;
    }
    if (hi > SchemeKey::kMax) {
        lo -= hi - SchemeKey::kMax;
        hi = SchemeKey::kMax;
    }
    return KeyDomain(make_key(lo).value(), make_key(hi).value());
}

// Every key in the domain whose decryption of the ciphertext reproduces the
// known plaintext prefix. The true key is always a member when the domain
// contains it. Robust verdict: candidate set size != 1.
inline std::vector<SchemeKey> kpa_bruteforce(SchemeId scheme, ByteView ciphertext,
                                             ByteView known_prefix, const KeyDomain& domain,
                                             const CipherParams& params = {}) {
    if (known_prefix.size() > ciphertext.size()) {
        throw std::invalid_argument("known prefix longer than ciphertext");
    }
    std::vector<SchemeKey> candidates;
    for (const SchemeKey& key : enumerate_keys(domain)) {
        StreamCipher cipher(scheme, key, params);
        bool match = true;
        for (std::size_t i = 0; i < known_prefix.size(); ++i) {
            if (cipher.decrypt_byte(ciphertext[i]) != known_prefix[i]) {
                match = false;
                break;
            }
        }
        if (match) {
            candidates.push_back(key);
        }
    }
    return candidates;
}

inline bool kpa_robust(const std::vector<SchemeKey>& candidates) {
    return candidates.size() != 1;
}

// Smallest prefix length in [2, |known|] whose candidate set is a singleton;
// 0 when no prefix of the known text pins the key down. Decryption state
// depends only on the ciphertext, so one full decryption per key yields the
// candidate counts for every prefix length at once.
inline std::size_t kpa_min_singleton_prefix(SchemeId scheme, ByteView ciphertext,
                                            ByteView known, const KeyDomain& domain,
                                            const CipherParams& params = {}) {
    if (known.size() > ciphertext.size()) {
        throw std::invalid_argument("known prefix longer than ciphertext");
    }
    // match_count[m] = number of keys agreeing on the first m bytes
    std::vector<std::size_t> match_count(known.size() + 1, 0);
    for (const SchemeKey& key : enumerate_keys(domain)) {
        StreamCipher cipher(scheme, key, params);
        std::size_t len = 0;
        while (len < known.size() && cipher.decrypt_byte(ciphertext[len]) == known[len]) {
            ++len;
        }
        for (std::size_t m = 0; m <= len; ++m) {
            ++match_count[m];
        }
    }
    for (std::size_t m = 2; m <= known.size(); ++m) {
        if (match_count[m] == 1) {
            return m;
        }
    }
    return 0;
}

enum class Verdict { Identifiable, NonIdentifiable };

inline std::string_view verdict_label(Verdict v) {
    return v == Verdict::Identifiable ? "I" : "NI";
}

struct CollisionGroup {
    Bytes output;                 // shared leading ciphertext bytes
    std::vector<SchemeKey> keys;  // every key producing them, in grid order
};

struct IdentifiabilityReport {
    Verdict verdict = Verdict::Identifiable;
    std::size_t key_count = 0;
    std::vector<CollisionGroup> collisions;  // groups of >= 2 keys, by first key
};

// Generic injectivity scan over a key domain: prefix_of(key) must return the
// leading output bytes for that key. Identifiable iff the map is injective.
template <typename PrefixFn>
IdentifiabilityReport identifiability_scan(const KeyDomain& domain, PrefixFn&& prefix_of) {
    std::vector<CollisionGroup> groups;
    std::map<Bytes, std::size_t> slot;
    for (const SchemeKey& key : enumerate_keys(domain)) {
        Bytes out = prefix_of(key);
        auto [it, inserted] = slot.try_emplace(out, groups.size());
        if (inserted) {
            groups.push_back(CollisionGroup{std::move(out), {key}});
        } else {
            groups[it->second].keys.push_back(key);
        }
    }
    IdentifiabilityReport report;
    report.key_count = 0;
    for (auto& group : groups) {
        report.key_count += group.keys.size();
        if (group.keys.size() >= 2) {
            report.collisions.push_back(std::move(group));
        }
    }
    report.verdict =
        report.collisions.empty() ? Verdict::Identifiable : Verdict::NonIdentifiable;
    return report;
}

// Byte-exact injectivity of key -> first n_out ciphertext bytes of p.
inline IdentifiabilityReport identifiability(SchemeId scheme, ByteView p,
                                             const KeyDomain& domain, int n_out,
                                             const CipherParams& params = {}) {
    if (n_out != 1 && n_out != 2) {
        throw std::invalid_argument("identifiability examines 1 or 2 leading output bytes");
    }
    if (p.size() < static_cast<std::size_t>(n_out)) {
        throw std::invalid_argument("plaintext shorter than requested output prefix");
    }
    return identifiability_scan(domain, [&](const SchemeKey& key) {
        return encrypt_prefix(scheme, key, p, static_cast<std::size_t>(n_out), params);
    });
}

// All colliding key pairs, expanded from the collision groups in report order.
inline std::vector<std::pair<SchemeKey, SchemeKey>> collision_pairs(
    const IdentifiabilityReport& report) {
    std::vector<std::pair<SchemeKey, SchemeKey>> pairs;
    for (const CollisionGroup& group : report.collisions) {
        for (std::size_t i = 0; i < group.keys.size(); ++i) {
            for (std::size_t j = i + 1; j < group.keys.size(); ++j) {
                pairs.emplace_back(group.keys[i], group.keys[j]);
            }
        }
    }
    return pairs;
}

// One row of an analysis table.
struct AnalysisRow {
    Bytes plaintext;
    SchemeKey key;
    std::string ciphertext_hex;
    double pt_sensitivity_pct = 0.0;
    double key_sensitivity_pct = 0.0;
    KeyDomain domain;
    Verdict identifiable = Verdict::NonIdentifiable;
    std::size_t kpa_min_singleton_prefix = 0;  // 0 = robust for the whole text
    bool secret_key_ok = false;
};

// Identifiability for a table row examines the two leading output bytes.
inline constexpr int kRowIdentifiabilityOutputs = 2;

// Compose the full analysis battery for one (scheme, key, text) triple. The
// secret-key verdict equals the identifiability verdict.
inline AnalysisRow analyze_row(SchemeId scheme, const SchemeKey& key, ByteView p,
                               const FlipSpec& flip, const CipherParams& params = {}) {
    const Bytes ciphertext = encrypt(scheme, key, p, params);
    const KeyDomain domain = key_domain(key);
    const IdentifiabilityReport ident =
        identifiability(scheme, p, domain, kRowIdentifiabilityOutputs, params);
    AnalysisRow row{
        Bytes(p.begin(), p.end()),
        key,
        hex_encode(ciphertext),
        plaintext_sensitivity(scheme, key, p, flip, params),
        key_sensitivity(scheme, key, p, SchemeKey::kGridStep, params),
        domain,
        ident.verdict,
        kpa_min_singleton_prefix(scheme, ciphertext, p, domain, params),
        ident.verdict == Verdict::Identifiable,
    };
    return row;
}

}  // namespace chaoscrypt
