#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoscrypt/report.hpp"

using namespace chaoscrypt;

namespace {

// Minimal RFC-4180 reader for checking the renderer's output.
std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

AnalysisRow sample_row(const std::string& text, double key_value) {
    const Bytes p(text.begin(), text.end());
    const SchemeKey key = make_key(key_value);
    return AnalysisRow{
        p,
        key,
        "00ff10",
        3.947368421052632,
        46.71052631578947,
        key_domain(key),
        Verdict::NonIdentifiable,
        0,
        false,
    };
}

}  // namespace

TEST_CASE("render_table emits a header-only table for no rows", "[report]") {
    const std::string csv = render_table({}, ReportFormat::Csv);
    CHECK(csv ==
          "sl_no,plaintext,key,ciphertext_hex,pt_sensitivity_pct,key_sensitivity_pct,"
          "key_domain,identifiability,kpa_robustness,secret_key\n");

    const std::string json = render_table({}, ReportFormat::Json);
    CHECK(nlohmann::json::parse(json).empty());

    const auto md_lines = split_lines(render_table({}, ReportFormat::Markdown));
    REQUIRE(md_lines.size() == 2);  // header + separator
}

TEST_CASE("render_table prints all ten columns at four-decimal precision", "[report]") {
    const auto rows = std::vector<AnalysisRow>{sample_row("Hello! how are you?", 3.65)};
    const auto lines = split_lines(render_table(rows, ReportFormat::Csv));
    REQUIRE(lines.size() == 2);
    const auto cells = parse_csv_line(lines[1]);
    REQUIRE(cells.size() == 10);
    CHECK(cells[0] == "1");
    CHECK(cells[1] == "Hello! how are you?");
    CHECK(cells[2] == "3.6500");
    CHECK(cells[3] == "00ff10");
    CHECK(cells[4] == "3.9474");
    CHECK(cells[5] == "46.7105");
    CHECK(cells[6] == "(3.5700, 3.7700)");
    CHECK(cells[7] == "NI");
    CHECK(cells[8] == "R");
    CHECK(cells[9] == "NO");
}

TEST_CASE("csv and json renderings carry identical values", "[report]") {
    std::vector<AnalysisRow> rows = {sample_row("first text", 3.87),
                                     sample_row("second text", 3.60)};
    rows[1].kpa_min_singleton_prefix = 5;
    rows[1].identifiable = Verdict::Identifiable;
    rows[1].secret_key_ok = true;

    const auto csv_lines = split_lines(render_table(rows, ReportFormat::Csv));
    const auto json = nlohmann::json::parse(render_table(rows, ReportFormat::Json));
    REQUIRE(json.size() == rows.size());
    REQUIRE(csv_lines.size() == rows.size() + 1);

    const auto header = parse_csv_line(csv_lines[0]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cells = parse_csv_line(csv_lines[i + 1]);
        REQUIRE(std::to_string(json[i][header[0]].get<std::size_t>()) == cells[0]);
        for (std::size_t c = 1; c < header.size(); ++c) {
            REQUIRE(json[i][header[c]].get<std::string>() == cells[c]);
        }
    }
}

TEST_CASE("csv quoting protects embedded separators", "[report]") {
    const auto rows = std::vector<AnalysisRow>{sample_row("a,b \"quoted\" text", 3.7)};
    const auto lines = split_lines(render_table(rows, ReportFormat::Csv));
    const auto cells = parse_csv_line(lines[1]);
    REQUIRE(cells.size() == 10);
    CHECK(cells[1] == "a,b \"quoted\" text");
}

TEST_CASE("markdown escapes pipes in cells", "[report]") {
    const auto rows = std::vector<AnalysisRow>{sample_row("a|b", 3.7)};
    const std::string md = render_table(rows, ReportFormat::Markdown);
    CHECK(md.find("a\\|b") != std::string::npos);
}

TEST_CASE("orbit_dump writes one data line per iterate", "[report]") {
    SECTION("chaotic reference orbit") {
        const std::string csv = orbit_dump({3.99, 0.99}, 5000);
        const auto lines = split_lines(csv);
        REQUIRE(lines.size() == 5001);
        CHECK(lines[0] == "index,x");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const double x = std::strtod(lines[i].c_str() + lines[i].find(',') + 1, nullptr);
            REQUIRE(x > 0.0);
            REQUIRE(x < 1.0);
        }
    }
    SECTION("values survive the decimal round trip bit-exactly") {
        const auto xs = orbit({3.99, 0.99}, 64);
        const auto lines = split_lines(orbit_dump({3.99, 0.99}, 64));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::string& line = lines[i + 1];
            REQUIRE(std::strtod(line.c_str() + line.find(',') + 1, nullptr) == xs[i]);
        }
    }
    SECTION("fixed point") {
        const auto lines = split_lines(orbit_dump({2.0, 0.5}, 3));
        REQUIRE(lines.size() == 4);
        for (std::size_t i = 1; i < 4; ++i) {
            CHECK(lines[i] == std::to_string(i) + ",0.5");
        }
    }
    SECTION("single iterate") {
        REQUIRE(split_lines(orbit_dump({3.7, 0.4}, 1)).size() == 2);
    }
}

TEST_CASE("parse_config applies defaults and validates values", "[report]") {
    SECTION("empty text keeps every default") {
        const Config config = parse_config("");
        CHECK(config.params.sine_omega == kTwoPi);
        CHECK(config.params.sine_phi == 0.0);
        CHECK(config.params.burn_in == 64);
        CHECK(config.params.x0 == 0.99);
        CHECK(config.params.quant_levels == 256);
        CHECK(config.nlfsr_feedback_name == "standard");
    }
    SECTION("single override") {
        const Config config = parse_config("burn_in=128\n");
        CHECK(config.params.burn_in == 128);
        CHECK(config.params.x0 == 0.99);
    }
    SECTION("comments and blank lines are ignored") {
        const Config config = parse_config("# defaults\n\n  x0 = 0.5 \nsine_phi=0.25\n");
        CHECK(config.params.x0 == 0.5);
        CHECK(config.params.sine_phi == 0.25);
    }
    SECTION("full set of keys") {
        const Config config = parse_config(
            "sine_omega=6.0\nsine_phi=-0.5\nnlfsr_feedback=standard\n"
            "burn_in=32\nx0=0.25\nquant_levels=128\n");
        CHECK(config.params.sine_omega == 6.0);
        CHECK(config.params.sine_phi == -0.5);
        CHECK(config.params.burn_in == 32);
        CHECK(config.params.x0 == 0.25);
        CHECK(config.params.quant_levels == 128);
    }
    SECTION("out-of-range x0") {
        CHECK_THROWS_MATCHES(parse_config("x0=1.5\n"), ConfigError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("line 1")));
    }
    SECTION("unknown key reports the line number") {
        CHECK_THROWS_MATCHES(parse_config("burn_in=1\nwat=3\n"), ConfigError,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("line 2")));
    }
    SECTION("malformed line") {
        CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
    }
    SECTION("bad numbers and ranges") {
        CHECK_THROWS_AS(parse_config("sine_omega=fast\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("burn_in=-3\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("quant_levels=1\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("quant_levels=300\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("nlfsr_feedback=bogus\n"), ConfigError);
    }
}

TEST_CASE("hex encoding is lowercase and invertible", "[report]") {
    CHECK(hex_encode(Bytes{0x00, 0xab, 0xff}) == "00abff");
    CHECK(hex_decode("00abff") == Bytes{0x00, 0xab, 0xff});
    CHECK(hex_decode("00ABFF") == Bytes{0x00, 0xab, 0xff});

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> dist(0, 255);
    for (int trial = 0; trial < 100; ++trial) {
        Bytes data(rng() % 100);
        for (auto& b : data) b = static_cast<std::uint8_t>(dist(rng));
        const std::string encoded = hex_encode(data);
        for (const char c : encoded) {
            REQUIRE(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
        }
        REQUIRE(hex_decode(encoded) == data);
    }

    CHECK_THROWS_AS(hex_decode("abc"), std::invalid_argument);
    CHECK_THROWS_AS(hex_decode("zz"), std::invalid_argument);
}
