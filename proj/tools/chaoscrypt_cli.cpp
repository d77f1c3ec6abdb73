// Command-line workbench: encrypt/decrypt plus the cryptanalysis battery
// (analysis tables, key sweeps, identifiability scans, known-plaintext
// search) and orbit dumps.
//
// Exit codes: 0 success, 2 usage/argument error, 3 domain/validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoscrypt/chaoscrypt.hpp"

namespace {

using namespace chaoscrypt;

Bytes read_all(std::istream& in) {
    Bytes data;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
        data.insert(data.end(), chunk, chunk + in.gcount());
    }
    return data;
}

Bytes read_input(const std::string& path) {
    if (path.empty()) {
        return read_all(std::cin);
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open input file '" + path + "'");
    }
    return read_all(file);
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file '" + path + "'");
    }
    file.write(data.data(), static_cast<std::streamsize>(data.size()));
}

SchemeId scheme_from(const std::string& name) {
    const auto scheme = parse_scheme(name);
    if (!scheme) {
        throw std::invalid_argument("unknown scheme '" + name + "'");
    }
    return *scheme;
}

FlipSpec parse_flip(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("--flip expects BYTE:BIT");
    }
    try {
        const unsigned long byte = std::stoul(text.substr(0, colon));
        const unsigned long bit = std::stoul(text.substr(colon + 1));
        if (bit > 7) {
            throw std::invalid_argument("--flip bit index must be 0..7");
        }
        return {static_cast<std::size_t>(byte), static_cast<unsigned>(bit)};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("--flip expects BYTE:BIT with numeric fields");
    }
}

ReportFormat format_from(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    return ReportFormat::Markdown;
}

Bytes to_bytes(const std::string& text) {
    return Bytes(text.begin(), text.end());
}

std::string strip_whitespace(const Bytes& data) {
    std::string out;
    out.reserve(data.size());
    for (const std::uint8_t b : data) {
        if (b == ' ' || b == '\n' || b == '\r' || b == '\t') continue;
        out.push_back(static_cast<char>(b));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaoscrypt: logistic-map stream ciphers and their cryptanalysis"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value file with scheme defaults")
        ->check(CLI::ExistingFile);

    const auto load_params = [&config_path]() -> CipherParams {
        if (config_path.empty()) {
            return {};
        }
        std::ifstream file(config_path, std::ios::binary);
        if (!file) {
            throw ConfigError("cannot read config file '" + config_path + "'");
        }
        std::ostringstream text;
        text << file.rdbuf();
        return parse_config(text.str()).params;
    };

    const std::vector<std::string> scheme_names = {"logistic", "nlfsr", "mnlfsr"};

    // encrypt: raw bytes in, lowercase hex out
    auto* enc = app.add_subcommand("encrypt", "encrypt raw input to hex ciphertext");
    std::string enc_scheme, enc_in, enc_out;
    double enc_key = 0.0;
    enc->add_option("--scheme", enc_scheme, "cipher scheme")
        ->required()
        ->check(CLI::IsMember(scheme_names));
    enc->add_option("--key", enc_key, "key value in [3.57, 4.0]")->required();
    enc->add_option("--in", enc_in, "input file (default stdin)");
    enc->add_option("--out", enc_out, "output file (default stdout)");
    enc->callback([&] {
        const Bytes plaintext = read_input(enc_in);
        const Bytes ciphertext =
            encrypt(scheme_from(enc_scheme), make_key(enc_key), plaintext, load_params());
        write_output(enc_out, hex_encode(ciphertext) + "\n");
    });

    // decrypt: hex in, raw bytes out
    auto* dec = app.add_subcommand("decrypt", "decrypt hex ciphertext to raw output");
    std::string dec_scheme, dec_in, dec_out;
    double dec_key = 0.0;
    dec->add_option("--scheme", dec_scheme, "cipher scheme")
        ->required()
        ->check(CLI::IsMember(scheme_names));
    dec->add_option("--key", dec_key, "key value in [3.57, 4.0]")->required();
    dec->add_option("--in", dec_in, "input file (default stdin)");
    dec->add_option("--out", dec_out, "output file (default stdout)");
    dec->callback([&] {
        const Bytes ciphertext = hex_decode(strip_whitespace(read_input(dec_in)));
        const Bytes plaintext =
            decrypt(scheme_from(dec_scheme), make_key(dec_key), ciphertext, load_params());
        write_output(dec_out, std::string(plaintext.begin(), plaintext.end()));
    });

    // analyze: one full table row for a (scheme, key, text) triple
    auto* ana = app.add_subcommand("analyze", "run the analysis battery on one text");
    std::string ana_scheme, ana_text, ana_flip = "0:0", ana_format = "markdown";
    double ana_key = 0.0;
    bool ana_flip_all = false;
    ana->add_option("--scheme", ana_scheme, "cipher scheme")
        ->required()
        ->check(CLI::IsMember(scheme_names));
    ana->add_option("--key", ana_key, "key value in [3.57, 4.0]")->required();
    ana->add_option("--text", ana_text, "plaintext string")->required();
    ana->add_option("--flip", ana_flip, "plaintext bit to perturb, BYTE:BIT (default 0:0)");
    ana->add_flag("--flip-all", ana_flip_all,
                  "average plaintext sensitivity over every single-bit flip");
    ana->add_option("--format", ana_format, "output format")
        ->check(CLI::IsMember({"csv", "json", "markdown"}));
    ana->callback([&] {
        const CipherParams params = load_params();
        const SchemeId scheme = scheme_from(ana_scheme);
        const SchemeKey key = make_key(ana_key);
        const Bytes text = to_bytes(ana_text);
        AnalysisRow row = analyze_row(scheme, key, text, parse_flip(ana_flip), params);
        if (ana_flip_all) {
            row.pt_sensitivity_pct = plaintext_sensitivity_mean(scheme, key, text, params);
        }
        std::cout << render_table({row}, format_from(ana_format));
    });

    // sweep: per-key ciphertext and sensitivities over a key interval
    auto* swp = app.add_subcommand("sweep", "per-key ciphertext and sensitivity listing");
    std::string swp_scheme, swp_text;
    double swp_lo = 0.0, swp_hi = 0.0, swp_step = SchemeKey::kGridStep;
    swp->add_option("--scheme", swp_scheme, "cipher scheme")
        ->required()
        ->check(CLI::IsMember(scheme_names));
    swp->add_option("--lo", swp_lo, "lowest key")->required();
    swp->add_option("--hi", swp_hi, "highest key")->required();
    swp->add_option("--step", swp_step, "key increment (default 0.0001)");
    swp->add_option("--text", swp_text, "plaintext string")->required();
    swp->callback([&] {
        const CipherParams params = load_params();
        const SchemeId scheme = scheme_from(swp_scheme);
        const Bytes text = to_bytes(swp_text);
        const KeyDomain domain(swp_lo, swp_hi, swp_step);
        std::cout << "key,ciphertext_hex,pt_sensitivity_pct,key_sensitivity_pct\n";
        for (const SchemeKey& key : enumerate_keys(domain)) {
            const Bytes ciphertext = encrypt(scheme, key, text, params);
            std::cout << format_key(key) << ',' << hex_encode(ciphertext) << ','
                      << format_fixed(plaintext_sensitivity(scheme, key, text, {0, 0}, params))
                      << ','
                      << format_fixed(key_sensitivity(scheme, key, text,
                                                      SchemeKey::kGridStep, params))
                      << '\n';
        }
    });

    // identify: output-injectivity scan around a key
    auto* idf = app.add_subcommand("identify", "key identifiability over a domain");
    std::string idf_scheme, idf_text;
    double idf_key = 0.0, idf_width = 0.20;
    int idf_nout = 2;
    idf->add_option("--scheme", idf_scheme, "cipher scheme")
        ->required()
        ->check(CLI::IsMember(scheme_names));
    idf->add_option("--key", idf_key, "key value in [3.57, 4.0]")->required();
    idf->add_option("--width", idf_width, "domain width (default 0.20)");
    idf->add_option("--nout", idf_nout, "leading output bytes to compare, 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    idf->add_option("--text", idf_text, "plaintext string")->required();
    idf->callback([&] {
        const CipherParams params = load_params();
        const KeyDomain domain = key_domain(make_key(idf_key), idf_width);
        const IdentifiabilityReport report =
            identifiability(scheme_from(idf_scheme), to_bytes(idf_text), domain, idf_nout,
                            params);
        std::cout << "domain: " << format_domain(domain) << "\n"
                  << "keys: " << report.key_count << "\n"
                  << "n_out: " << idf_nout << "\n"
                  << "verdict: " << verdict_label(report.verdict) << "\n"
                  << "collision_groups: " << report.collisions.size() << "\n";
        for (const CollisionGroup& group : report.collisions) {
            std::cout << "collision output=" << hex_encode(group.output) << " keys=";
            for (std::size_t i = 0; i < group.keys.size(); ++i) {
                if (i) std::cout << ' ';
                std::cout << format_key(group.keys[i]);
            }
            std::cout << '\n';
        }
    });

    // kpa: brute-force key search with a known plaintext prefix
    auto* kpa = app.add_subcommand("kpa", "known-plaintext brute force over a domain");
    std::string kpa_scheme, kpa_text;
    double kpa_key = 0.0, kpa_width = 0.20;
    std::size_t kpa_prefix = 0;
    kpa->add_option("--scheme", kpa_scheme, "cipher scheme")
        ->required()
        ->check(CLI::IsMember(scheme_names));
    kpa->add_option("--key", kpa_key, "true key used to form the ciphertext")->required();
    kpa->add_option("--text", kpa_text, "plaintext string")->required();
    kpa->add_option("--prefix-len", kpa_prefix, "known plaintext prefix length")->required();
    kpa->add_option("--width", kpa_width, "domain width (default 0.20)");
    kpa->callback([&] {
        const CipherParams params = load_params();
        const SchemeId scheme = scheme_from(kpa_scheme);
        const SchemeKey key = make_key(kpa_key);
        const Bytes text = to_bytes(kpa_text);
        if (kpa_prefix > text.size()) {
            throw std::invalid_argument("--prefix-len exceeds text length");
        }
        const KeyDomain domain = key_domain(key, kpa_width);
        const Bytes ciphertext = encrypt(scheme, key, text, params);
        const std::vector<SchemeKey> candidates = kpa_bruteforce(
            scheme, ciphertext, ByteView(text).first(kpa_prefix), domain, params);
        std::cout << "domain: " << format_domain(domain) << "\n"
                  << "prefix_len: " << kpa_prefix << "\n"
                  << "candidates: " << candidates.size() << "\n"
                  << "robust: " << (kpa_robust(candidates) ? "yes" : "no") << "\n";
        for (const SchemeKey& candidate : candidates) {
            std::cout << format_key(candidate) << '\n';
        }
    });

    // orbit: CSV trace of the bare map
    auto* orb = app.add_subcommand("orbit", "dump a logistic-map orbit as CSV");
    double orb_r = 3.99, orb_x0 = 0.99;
    std::size_t orb_n = 0;
    std::string orb_out;
    orb->add_option("--r", orb_r, "control parameter in (0, 4]")->required();
    orb->add_option("--x0", orb_x0, "initial state in (0, 1)")->required();
    orb->add_option("--n", orb_n, "number of iterates")->required();
    orb->add_option("--out", orb_out, "output file (default stdout)");
    orb->callback([&] {
        write_output(orb_out, orbit_dump({orb_r, orb_x0}, orb_n));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
