#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kcensus/error.hpp"
#include "kcensus/laurent.hpp"

namespace kcensus {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Dowker-Thistlethwaite code of a knot diagram: the signed even labels
/// paired with odd labels 1, 3, ..., 2n-1 in order.  Magnitudes are exactly
/// {2, 4, ..., 2n}; a negative entry means the even-numbered pass at that
/// crossing goes over.
struct DTCode {
    std::vector<int> entries;

    bool operator==(const DTCode&) const = default;
    int crossing_count() const { return static_cast<int>(entries.size()); }
};

/// T(r1,s1,...,rk,sk): parameters of a generalized twisted torus braid,
/// stored with r strictly decreasing.
struct TTKSpec {
    std::vector<std::pair<int, int>> pairs;  // (r_i, s_i)

    bool operator==(const TTKSpec&) const = default;
};

/// Word in the braid group B_n: letter +i is the generator sigma_i,
/// letter -i its inverse.
struct BraidWord {
    int strands = 2;
    std::vector<int> letters;

    bool operator==(const BraidWord&) const = default;
};

using KnotInput = std::variant<TTKSpec, BraidWord>;

/// Degree-span encoding of a Laurent polynomial: lowest degree, highest
/// degree, then all coefficients from low up to high inclusive.
struct DegreeSpanEntry {
    int low = 0;
    int high = 0;
    std::vector<BigInt> coefficients;

    bool operator==(const DegreeSpanEntry&) const = default;
};

/// One row of a census table.  volume and systole are required by the file
/// format but may be absent on hand-built records; sorting requires them.
struct CensusRecord {
    std::string name;
    std::string census_id;
    std::optional<double> volume;
    std::optional<double> chern_simons;
    std::string symmetry;  // "0", "Z2", "D2", "D4", or free text
    std::optional<double> systole;
    std::optional<double> second_geodesic;
    std::string description;
    std::optional<DTCode> dt;

    bool operator==(const CensusRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Shared token helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_tokens(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && seps.find(s[i]) != std::string_view::npos) ++i;
        std::size_t j = i;
        while (j < s.size() && seps.find(s[j]) == std::string_view::npos) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Split on a single delimiter, keeping empty fields.
inline std::vector<std::string_view> split_fields(std::string_view s, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == delim) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::optional<long long> parse_int(std::string_view tok) {
    tok = trim(tok);
    if (tok.empty()) return std::nullopt;
    long long value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
    return value;
}

inline std::optional<double> parse_real(std::string_view tok) {
    tok = trim(tok);
    if (tok.empty()) return std::nullopt;
    double value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
    return value;
}

/// Shortest decimal representation that parses back to the same double.
inline std::string format_real(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DT codes
// ---------------------------------------------------------------------------

/// Validate entries as a DT code: even, nonzero, magnitudes exactly
/// {2, 4, ..., 2n}.
inline DTCode make_dt_code(std::vector<int> entries) {
    if (entries.empty()) throw Error(ErrorKind::EmptyInput, "DT code has no entries");
    std::set<int> magnitudes;
    for (int e : entries) {
        if (e == 0) throw Error(ErrorKind::ZeroEntry, "DT entries must be nonzero");
        if (e % 2 != 0) throw Error(ErrorKind::OddEntry, "DT entry " + std::to_string(e) + " is odd");
        int mag = std::abs(e);
        if (!magnitudes.insert(mag).second)
            throw Error(ErrorKind::DuplicateMagnitude,
                        "magnitude " + std::to_string(mag) + " appears twice");
    }
    const int n = static_cast<int>(entries.size());
    for (int expect = 2; expect <= 2 * n; expect += 2)
        if (!magnitudes.count(expect))
            throw Error(ErrorKind::MissingMagnitude,
                        "magnitude " + std::to_string(expect) + " is missing");
    return DTCode{std::move(entries)};
}

inline DTCode parse_dt(std::string_view text) {
    auto tokens = detail::split_tokens(text, " \t\r\n,");
    if (tokens.empty()) throw Error(ErrorKind::EmptyInput, "no DT entries in input");
    std::vector<int> entries;
    entries.reserve(tokens.size());
    for (auto tok : tokens) {
        auto v = detail::parse_int(tok);
        if (!v) throw Error(ErrorKind::SyntaxError, "bad DT token '" + std::string(tok) + "'");
        entries.push_back(static_cast<int>(*v));
    }
    return make_dt_code(std::move(entries));
}

inline std::string serialize_dt(const DTCode& code) {
    std::ostringstream os;
    for (std::size_t i = 0; i < code.entries.size(); ++i) {
        if (i) os << ' ';
        os << code.entries[i];
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// T-notation and braid words
// ---------------------------------------------------------------------------

inline TTKSpec make_ttk_spec(std::vector<std::pair<int, int>> pairs) {
    if (pairs.empty()) throw Error(ErrorKind::SyntaxError, "T-notation needs at least one (r,s) pair");
    for (auto [r, s] : pairs) {
        if (r < 2) throw Error(ErrorKind::SyntaxError, "r parameter " + std::to_string(r) + " < 2");
        if (s == 0) throw Error(ErrorKind::SyntaxError, "s parameter must be nonzero");
    }
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first >= pairs[i - 1].first)
            throw Error(ErrorKind::NonDecreasingR, "r parameters must strictly decrease");
    return TTKSpec{std::move(pairs)};
}

inline BraidWord make_braid_word(int strands, std::vector<int> letters) {
    if (strands < 2)
        throw Error(ErrorKind::BadStrandCount, "braid needs at least 2 strands");
    for (int l : letters)
        if (l == 0 || std::abs(l) > strands - 1)
            throw Error(ErrorKind::BadStrandIndex,
                        "letter " + std::to_string(l) + " invalid on " +
                            std::to_string(strands) + " strands");
    return BraidWord{strands, std::move(letters)};
}

/// Accepts "T(r1,s1,...,rk,sk)" (commas or semicolons) or a raw braid word
/// "n: i1 i2 ... im".
inline KnotInput parse_knot_input(std::string_view text) {
    auto s = detail::trim(text);
    if (s.empty()) throw Error(ErrorKind::EmptyInput, "empty knot input");

    if (s.front() == 'T' || s.front() == 't') {
        auto open = s.find('(');
        auto close = s.rfind(')');
        if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
            !detail::trim(s.substr(1, open - 1)).empty() || !detail::trim(s.substr(close + 1)).empty())
            throw Error(ErrorKind::SyntaxError, "malformed T-notation '" + std::string(s) + "'");
        auto inner = s.substr(open + 1, close - open - 1);
        auto tokens = detail::split_tokens(inner, ",; \t");
        if (tokens.empty()) throw Error(ErrorKind::SyntaxError, "empty T-notation");
        if (tokens.size() % 2 != 0)
            throw Error(ErrorKind::OddArity, "T-notation needs an even number of parameters");
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 0; i < tokens.size(); i += 2) {
            auto r = detail::parse_int(tokens[i]);
            auto q = detail::parse_int(tokens[i + 1]);
            if (!r || !q)
                throw Error(ErrorKind::SyntaxError, "bad T-notation parameter");
            pairs.emplace_back(static_cast<int>(*r), static_cast<int>(*q));
        }
        return make_ttk_spec(std::move(pairs));
    }

    auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorKind::SyntaxError, "expected T(...) or 'n: letters', got '" + std::string(s) + "'");
    auto n = detail::parse_int(s.substr(0, colon));
    if (!n || *n < 2)
        throw Error(ErrorKind::SyntaxError, "bad strand count in braid word");
    std::vector<int> letters;
    for (auto tok : detail::split_tokens(s.substr(colon + 1), " \t,")) {
        auto v = detail::parse_int(tok);
        if (!v) throw Error(ErrorKind::SyntaxError, "bad braid letter '" + std::string(tok) + "'");
        letters.push_back(static_cast<int>(*v));
    }
    return make_braid_word(static_cast<int>(*n), std::move(letters));
}

inline std::string to_string(const TTKSpec& spec) {
    std::ostringstream os;
    os << "T(";
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
        if (i) os << ",";
        os << spec.pairs[i].first << "," << spec.pairs[i].second;
    }
    os << ")";
    return os.str();
}

inline std::string to_string(const BraidWord& w) {
    std::ostringstream os;
    os << w.strands << ":";
    for (int l : w.letters) os << " " << l;
    return os.str();
}

// ---------------------------------------------------------------------------
// Jones degree-span entries
// ---------------------------------------------------------------------------

/// Encode a nonzero polynomial a0*t^n + ... + ak*t^m as ((n,m), [a0..ak]).
inline DegreeSpanEntry format_jones_entry(const LaurentPolynomial& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no degree span");
    DegreeSpanEntry e;
    e.low = p.min_exponent();
    e.high = p.max_exponent();
    e.coefficients.reserve(e.high - e.low + 1);
    for (int d = e.low; d <= e.high; ++d) e.coefficients.push_back(p.coefficient(d));
    return e;
}

inline std::string to_string(const DegreeSpanEntry& e) {
    std::ostringstream os;
    os << "(" << e.low << "," << e.high << ")";
    for (const auto& c : e.coefficients) os << " " << c;
    return os.str();
}

// ---------------------------------------------------------------------------
// Census record files
// ---------------------------------------------------------------------------
//
// One record per line, 9 comma-separated fields:
//   name,census_id,volume,chern_simons,symmetry,systole,second_geodesic,description,dt
// chern_simons, second_geodesic and dt may be empty; '#' starts a comment.

namespace detail {

inline double require_positive_real(std::string_view field, const char* what, int line) {
    auto v = parse_real(field);
    if (!v || !(*v > 0))
        throw Error(ErrorKind::BadField, std::string("line ") + std::to_string(line) + ": bad " +
                                             what + " '" + std::string(field) + "'");
    return *v;
}

}  // namespace detail

inline CensusRecord parse_census_line(std::string_view line, int line_number) {
    auto fields = detail::split_fields(line, ',');
    if (fields.size() != 9)
        throw Error(ErrorKind::MissingColumn,
                    "line " + std::to_string(line_number) + ": expected 9 fields, got " +
                        std::to_string(fields.size()));
    CensusRecord r;
    r.name = std::string(detail::trim(fields[0]));
    r.census_id = std::string(detail::trim(fields[1]));
    if (r.name.empty())
        throw Error(ErrorKind::BadField, "line " + std::to_string(line_number) + ": empty name");
    r.volume = detail::require_positive_real(fields[2], "volume", line_number);
    if (!detail::trim(fields[3]).empty()) {
        auto cs = detail::parse_real(fields[3]);
        if (!cs)
            throw Error(ErrorKind::BadField, "line " + std::to_string(line_number) +
                                                 ": bad chern_simons '" + std::string(fields[3]) + "'");
        r.chern_simons = *cs;
    }
    r.symmetry = std::string(detail::trim(fields[4]));
    r.systole = detail::require_positive_real(fields[5], "systole", line_number);
    if (!detail::trim(fields[6]).empty())
        r.second_geodesic = detail::require_positive_real(fields[6], "second_geodesic", line_number);
    r.description = std::string(detail::trim(fields[7]));
    if (!detail::trim(fields[8]).empty()) {
        try {
            r.dt = parse_dt(fields[8]);
        } catch (const Error& e) {
            throw Error(ErrorKind::BadField,
                        "line " + std::to_string(line_number) + ": bad dt field (" + e.what() + ")");
        }
    }
    return r;
}

inline std::vector<CensusRecord> parse_census_file(std::istream& in) {
    std::vector<CensusRecord> records;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        records.push_back(parse_census_line(t, line_number));
    }
    return records;
}

inline std::string serialize_census_record(const CensusRecord& r) {
    auto check_text = [](const std::string& s, const char* what) {
        if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
            throw Error(ErrorKind::BadField, std::string(what) + " may not contain commas or newlines");
        return s;
    };
    if (!r.volume || !r.systole)
        throw Error(ErrorKind::MissingField, "census record needs volume and systole to serialize");
    std::ostringstream os;
    os << check_text(r.name, "name") << ',' << check_text(r.census_id, "census_id") << ','
       << detail::format_real(*r.volume) << ','
       << (r.chern_simons ? detail::format_real(*r.chern_simons) : std::string()) << ','
       << check_text(r.symmetry, "symmetry") << ',' << detail::format_real(*r.systole) << ','
       << (r.second_geodesic ? detail::format_real(*r.second_geodesic) : std::string()) << ','
       << check_text(r.description, "description") << ','
       << (r.dt ? serialize_dt(*r.dt) : std::string());
    return os.str();
}

}  // namespace kcensus
