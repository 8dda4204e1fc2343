#pragma once

// Fixture files (`hml-fixture/1`), ideal specs on the command line, and the
// fixed number formatting used by every report.
//
// A fixture is UTF-8 text. Header lines are `# key: value`; data lines hold
// four tab-separated fields per prime:
//
//   # format: hml-fixture/1
//   # label: delta
//   # field_disc: 1
//   # weights: 12
//   # level: 1
//   # level_norm: 1
//   # cm_flag: 0
//   # columns: residue_char	index	prime_norm	eigenvalue
//   2	0	2	-24
//
// Eigenvalues are exact: an integer or `num/den`.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hml/arith.hpp"
#include "hml/error.hpp"
#include "hml/forms.hpp"
#include "hml/quadfield.hpp"

namespace hml {

inline constexpr const char* kFixtureFormat = "hml-fixture/1";

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::int64_t parse_int(std::string_view text, const char* what) {
    const std::string s = trim(text);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw ParseError(std::string("expected an integer for ") + what + ", got '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
            throw ParseError(std::string("expected an integer for ") + what + ", got '" + s + "'");
        }
    }
    try {
        return std::stoll(s);
    } catch (const std::out_of_range&) {
        throw ParseError(std::string("integer out of range for ") + what + ": '" + s + "'");
    }
}

inline bool is_integer_text(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace detail

/// Parses `a` or `a/b` (b nonzero) into an exact rational.
inline Rational parse_rational(std::string_view text) {
    const std::string s = detail::trim(text);
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!detail::is_integer_text(num) || !detail::is_integer_text(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("expected an exact rational 'a' or 'a/b', got '" + s + "'");
    }
    const BigInt d(den);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(BigInt(num[0] == '+' ? num.substr(1) : num), d);
}

/// `1` for the unit ideal; otherwise factors `p` or `p.i`, optionally `^e`,
/// joined by `*`. A bare `p` must have a single prime above it.
inline Ideal parse_ideal(const Field& field, std::string_view spec) {
    const std::string s = detail::trim(spec);
    if (s.empty()) throw ParseError("empty ideal spec");
    if (s == "1") return Ideal::unit(field);
    std::vector<IdealFactor> factors;
    for (const auto& token : detail::split(s, '*')) {
        const std::string t = detail::trim(token);
        const auto caret = t.find('^');
        const std::string base = t.substr(0, caret);
        const int exponent = caret == std::string::npos ? 1 : static_cast<int>(detail::parse_int(t.substr(caret + 1), "exponent"));
        if (exponent < 1) throw ParseError("ideal spec exponent must be positive in '" + t + "'");
        const auto dot = base.find('.');
        const std::int64_t p = detail::parse_int(base.substr(0, dot), "residue characteristic");
        if (!is_prime(p)) throw ParseError("ideal spec '" + t + "': " + std::to_string(p) + " is not prime");
        const auto above = split_prime(field, p);
        PrimeIdeal prime;
        if (dot == std::string::npos) {
            if (above.size() != 1) {
                throw ParseError("ideal spec '" + t + "' is ambiguous: " + std::to_string(p) +
                                 " splits, write " + std::to_string(p) + ".0 or " + std::to_string(p) + ".1");
            }
            prime = above.front();
        } else {
            const int index = static_cast<int>(detail::parse_int(base.substr(dot + 1), "prime index"));
            prime = prime_ideal(field, p, index);
        }
        factors.push_back({prime, exponent});
    }
    return Ideal::from_factors(field, std::move(factors));
}

/// Doubles with 12 significant digits.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Integer, or `num/den` in lowest terms.
inline std::string format_rational(const Rational& q) {
    return q.str();
}

struct FixtureRow {
    std::int64_t residue_char = 0;
    int index = 0;
    std::int64_t prime_norm = 0;
    Rational eigenvalue;
};

struct Fixture {
    std::string format_version = kFixtureFormat;
    std::int64_t field_disc = 1;
    std::vector<int> weights;
    std::string level = "1";
    std::int64_t level_norm = 1;
    std::string label;
    bool cm_flag = false;
    std::vector<FixtureRow> rows;

    Field field() const { return field_from_disc(field_disc); }

    /// Eigenvalue table; unless allow_unchecked, every eigenvalue must satisfy
    /// the Ramanujan bound.
    EigenPrimeTable to_table(bool allow_unchecked = false) const {
        const Field f = field();
        const Ideal lvl = parse_ideal(f, level);
        if (lvl.norm() != level_norm) {
            throw ParseError("fixture level " + level + " has norm " + std::to_string(lvl.norm()) +
                             " but level_norm says " + std::to_string(level_norm));
        }
        EigenPrimeTable table(f, WeightData::from(weights), lvl);
        table.cm_flag = cm_flag;
        table.label = label;
        for (const auto& row : rows) {
            if (!is_prime(row.residue_char)) {
                throw ParseError("fixture row: residue_char " + std::to_string(row.residue_char) + " is not prime");
            }
            const PrimeIdeal p = prime_ideal(f, row.residue_char, row.index);
            if (p.norm != row.prime_norm) {
                throw ParseError("fixture row " + p.label() + ": prime_norm " + std::to_string(row.prime_norm) +
                                 " is inconsistent with splitting (expected " + std::to_string(p.norm) + ")");
            }
            if (table.entries.count(p)) throw ParseError("fixture lists prime " + p.label() + " twice");
            table.set(p, row.eigenvalue);
        }
        if (!allow_unchecked) {
            const auto report = validate_ramanujan(table);
            if (!report.pass) {
                std::string names;
                for (const auto& p : report.failures()) names += (names.empty() ? "" : ", ") + p.label();
                throw RamanujanViolation("fixture '" + label + "' violates the Ramanujan bound at " + names);
            }
        }
        return table;
    }

    static Fixture from_table(const EigenPrimeTable& table) {
        Fixture out;
        out.field_disc = table.field.disc;
        out.weights = table.weight.weights;
        out.level = table.level.label();
        out.level_norm = table.level.norm();
        out.label = table.label;
        out.cm_flag = table.cm_flag;
        std::vector<std::pair<PrimeIdeal, Rational>> sorted(table.entries.begin(), table.entries.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return a.first.norm != b.first.norm ? a.first.norm < b.first.norm : a.first < b.first;
        });
        for (const auto& [p, c] : sorted) out.rows.push_back({p.residue_char, p.index, p.norm, c});
        return out;
    }
};

inline void write_fixture(std::ostream& os, const Fixture& fx) {
    os << "# format: " << fx.format_version << "\n";
    os << "# label: " << fx.label << "\n";
    os << "# field_disc: " << fx.field_disc << "\n";
    os << "# weights: ";
    for (std::size_t i = 0; i < fx.weights.size(); ++i) os << (i ? "," : "") << fx.weights[i];
    os << "\n";
    os << "# level: " << fx.level << "\n";
    os << "# level_norm: " << fx.level_norm << "\n";
    os << "# cm_flag: " << (fx.cm_flag ? 1 : 0) << "\n";
    os << "# columns: residue_char\tindex\tprime_norm\teigenvalue\n";
    for (const auto& r : fx.rows) {
        os << r.residue_char << '\t' << r.index << '\t' << r.prime_norm << '\t' << format_rational(r.eigenvalue)
           << "\n";
    }
}

inline Fixture read_fixture(std::istream& is) {
    Fixture fx;
    fx.format_version.clear();
    std::map<std::string, std::string> header;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1);
            const auto colon = body.find(':');
            if (colon == std::string::npos) continue;
            header[detail::trim(body.substr(0, colon))] = detail::trim(body.substr(colon + 1));
            continue;
        }
        const auto fields = detail::split(line, '\t');
        if (fields.size() != 4) {
            throw ParseError("fixture line " + std::to_string(lineno) + ": expected 4 tab-separated fields, got " +
                             std::to_string(fields.size()));
        }
        FixtureRow row;
        row.residue_char = detail::parse_int(fields[0], "residue_char");
        row.index = static_cast<int>(detail::parse_int(fields[1], "index"));
        row.prime_norm = detail::parse_int(fields[2], "prime_norm");
        row.eigenvalue = parse_rational(fields[3]);
        fx.rows.push_back(std::move(row));
    }
    auto require = [&](const char* key) -> const std::string& {
        auto it = header.find(key);
        if (it == header.end()) throw ParseError(std::string("fixture header is missing '") + key + "'");
        return it->second;
    };
    fx.format_version = require("format");
    if (fx.format_version != kFixtureFormat) {
        throw ParseError("unsupported fixture format '" + fx.format_version + "' (expected " + kFixtureFormat + ")");
    }
    fx.field_disc = detail::parse_int(require("field_disc"), "field_disc");
    for (const auto& w : detail::split(require("weights"), ',')) {
        fx.weights.push_back(static_cast<int>(detail::parse_int(w, "weights")));
    }
    const Field field = fx.field();
    if (static_cast<int>(fx.weights.size()) != field.degree) {
        throw ParseError("fixture has " + std::to_string(fx.weights.size()) + " weights for a field of degree " +
                         std::to_string(field.degree));
    }
    if (auto it = header.find("level"); it != header.end()) fx.level = it->second;
    const Ideal lvl = parse_ideal(field, fx.level);
    fx.level_norm = lvl.norm();
    if (auto it = header.find("level_norm"); it != header.end()) {
        if (detail::parse_int(it->second, "level_norm") != lvl.norm()) {
            throw ParseError("fixture level " + fx.level + " has norm " + std::to_string(lvl.norm()) +
                             " but level_norm says " + it->second);
        }
    }
    if (auto it = header.find("label"); it != header.end()) fx.label = it->second;
    if (auto it = header.find("cm_flag"); it != header.end()) fx.cm_flag = detail::parse_int(it->second, "cm_flag") != 0;
    return fx;
}

inline Fixture read_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open fixture file '" + path + "'");
    return read_fixture(in);
}

/// Minimal delimited-text writer; fields containing the separator, quotes or
/// newlines are quoted.
class CsvWriter {
  public:
    CsvWriter(std::ostream& out, char sep) : out_(out), sep_(sep) {}

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << sep_;
            out_ << escape(fields[i]);
        }
        out_ << "\n";
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  private:
    std::string escape(const std::string& f) const {
        if (f.find(sep_) == std::string::npos && f.find('"') == std::string::npos && f.find('\n') == std::string::npos) {
            return f;
        }
        std::string q = "\"";
        for (char c : f) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }

    std::ostream& out_;
    char sep_;
};

}  // namespace hml
