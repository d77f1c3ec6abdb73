#pragma once

// Report rendering (csv/json/markdown analysis tables), orbit dumps, and the
// key=value config file feeding scheme defaults.

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chaoscrypt/analysis.hpp"
#include "chaoscrypt/chaos.hpp"

namespace chaoscrypt {

enum class ReportFormat { Csv, Json, Markdown };

inline std::string format_fixed(double value, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

inline std::string format_key(const SchemeKey& key) {
    return format_fixed(key.value());
}

inline std::string format_domain(const KeyDomain& domain) {
    return "(" + format_fixed(domain.lo) + ", " + format_fixed(domain.hi) + ")";
}

namespace detail {

inline const std::vector<std::string>& table_columns() {
    static const std::vector<std::string> columns = {
        "sl_no",           "plaintext",           "key",
        "ciphertext_hex",  "pt_sensitivity_pct",  "key_sensitivity_pct",
        "key_domain",      "identifiability",     "kpa_robustness",
        "secret_key",
    };
    return columns;
}

// Cell values in column order, all pre-formatted to the table's precision.
inline std::vector<std::string> row_cells(const AnalysisRow& row, std::size_t index) {
    return {
        std::to_string(index),
        std::string(row.plaintext.begin(), row.plaintext.end()),
        format_key(row.key),
        row.ciphertext_hex,
        format_fixed(row.pt_sensitivity_pct),
        format_fixed(row.key_sensitivity_pct),
        format_domain(row.domain),
        std::string(verdict_label(row.identifiable)),
        row.kpa_min_singleton_prefix == 0 ? std::string("R")
                                          : std::to_string(row.kpa_min_singleton_prefix),
        row.secret_key_ok ? std::string("YES") : std::string("NO"),
    };
}

inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string md_escape(const std::string& cell) {
    std::string out;
    for (const char c : cell) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

// Analysis table with one line per row. Percentages carry four decimals; the
// KPA column shows the minimal prefix length that pins the key down, or "R"
// when the whole text leaves more than one candidate.
inline std::string render_table(const std::vector<AnalysisRow>& rows, ReportFormat format) {
    const auto& columns = detail::table_columns();
    switch (format) {
        case ReportFormat::Csv: {
            std::string out;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                if (c) out += ',';
                out += columns[c];
            }
            out += '\n';
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto cells = detail::row_cells(rows[i], i + 1);
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (c) out += ',';
                    out += detail::csv_escape(cells[c]);
                }
                out += '\n';
            }
            return out;
        }
        case ReportFormat::Json: {
            nlohmann::json arr = nlohmann::json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto cells = detail::row_cells(rows[i], i + 1);
                nlohmann::json obj;
                obj[columns[0]] = i + 1;
                for (std::size_t c = 1; c < cells.size(); ++c) {
                    obj[columns[c]] = cells[c];
                }
                arr.push_back(std::move(obj));
            }
            return arr.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
        }
        case ReportFormat::Markdown: {
            std::string out = "|";
            for (const auto& col : columns) {
                out += " " + col + " |";
            }
            out += "\n|";
            for (std::size_t c = 0; c < columns.size(); ++c) {
                out += " --- |";
            }
            out += '\n';
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto cells = detail::row_cells(rows[i], i + 1);
                out += "|";
                for (const auto& cell : cells) {
                    out += " " + detail::md_escape(cell) + " |";
                }
                out += '\n';
            }
            return out;
        }
    }
    return {};
}

// CSV orbit trace: header line then n data lines. Values are printed with 17
// significant digits so they survive a decimal round trip bit-exactly.
inline std::string orbit_dump(const LogisticParams& params, std::size_t n) {
    const std::vector<double> xs = orbit(params, n);
    std::string out = "index,x\n";
    char buf[64];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, xs[i]);
        out += buf;
    }
    return out;
}

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Scheme defaults as read from a line-oriented key=value file.
struct Config {
    CipherParams params;
    std::string nlfsr_feedback_name = "standard";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline double parse_double(std::string_view value, std::size_t line) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" +
                          std::string(value) + "'");
    }
    return out;
}

inline long parse_long(std::string_view value, std::size_t line) {
    long out = 0;
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("line " + std::to_string(line) + ": expected an integer, got '" +
                          std::string(value) + "'");
    }
    return out;
}

}  // namespace detail

// Keys: sine_omega, sine_phi, nlfsr_feedback, burn_in, x0, quant_levels.
// Blank lines and '#' comments are ignored; unknown keys and out-of-range
// values are rejected with the offending line number.
inline Config parse_config(std::string_view text) {
    Config config;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));

        if (key == "sine_omega") {
            config.params.sine_omega = detail::parse_double(value, line_no);
        } else if (key == "sine_phi") {
            config.params.sine_phi = detail::parse_double(value, line_no);
        } else if (key == "nlfsr_feedback") {
            if (value != "standard") {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unknown nlfsr_feedback '" + std::string(value) + "'");
            }
            config.nlfsr_feedback_name = value;
            config.params.nlfsr_feedback = nlfsr_standard_feedback;
        } else if (key == "burn_in") {
            const long v = detail::parse_long(value, line_no);
            if (v < 0) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": burn_in must be non-negative");
            }
            config.params.burn_in = static_cast<std::size_t>(v);
        } else if (key == "x0") {
            const double v = detail::parse_double(value, line_no);
            if (!(v > 0.0 && v < 1.0)) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": x0 must be in (0, 1)");
            }
            config.params.x0 = v;
        } else if (key == "quant_levels") {
            const long v = detail::parse_long(value, line_no);
            if (v < 2 || v > 256) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": quant_levels must be in [2, 256]");
            }
            config.params.quant_levels = static_cast<int>(v);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
        }
    }
    return config;
}

}  // namespace chaoscrypt
