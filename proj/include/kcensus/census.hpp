#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kcensus/bigint.hpp"
#include "kcensus/braid.hpp"
#include "kcensus/notation.hpp"

namespace kcensus {

namespace detail {

/// Census files carry rounded decimals, so ordering compares values after
/// normalizing to exactly 10 decimal places (as integers scaled by 10^10);
/// bitwise double comparison would depend on the serialization.
inline BigInt scaled_decimal(double v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    std::string s(buf);
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '-') {
        negative = true;
        i = 1;
    }
    std::string digits;
    for (; i < s.size(); ++i)
        if (s[i] != '.') digits.push_back(s[i]);
    BigInt value(digits);
    return negative ? -value : value;
}

struct CensusSortKey {
    BigInt volume;
    BigInt systole;
    std::optional<BigInt> second_geodesic;
    std::string census_id;

    /// Volume ascending, then systole descending, then second geodesic
    /// descending with absent values last, then census_id ascending.
    bool operator<(const CensusSortKey& o) const {
        if (volume != o.volume) return volume < o.volume;
        if (systole != o.systole) return systole > o.systole;
        if (second_geodesic != o.second_geodesic) {
            if (!second_geodesic) return false;
            if (!o.second_geodesic) return true;
            return *second_geodesic > *o.second_geodesic;
        }
        return census_id < o.census_id;
    }
};

}  // namespace detail

/// Order records by the census conventions and rename them
/// k{tet_count}_{index} with 1-based indices in sorted order.
inline std::vector<CensusRecord> sort_and_name(std::vector<CensusRecord> records, int tet_count) {
    std::vector<std::pair<detail::CensusSortKey, std::size_t>> keyed;
    keyed.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!r.volume || !r.systole)
            throw Error(ErrorKind::MissingField,
                        "record '" + r.name + "' lacks volume or systole");
        detail::CensusSortKey key;
        key.volume = detail::scaled_decimal(*r.volume);
        key.systole = detail::scaled_decimal(*r.systole);
        if (r.second_geodesic) key.second_geodesic = detail::scaled_decimal(*r.second_geodesic);
        key.census_id = r.census_id;
        keyed.emplace_back(std::move(key), i);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CensusRecord> out;
    out.reserve(records.size());
    for (std::size_t rank = 0; rank < keyed.size(); ++rank) {
        CensusRecord r = records[keyed[rank].second];
        r.name = "k" + std::to_string(tet_count) + "_" + std::to_string(rank + 1);
        out.push_back(std::move(r));
    }
    return out;
}

/// A record counts as a Lorenz knot when its description is T-notation with
/// every twist positive; the mirror-inclusive count also accepts
/// descriptions whose mirror is Lorenz-form.
inline bool is_lorenz_record(const CensusRecord& r, bool include_mirrors) {
    if (r.description.empty()) return false;
    try {
        auto input = parse_knot_input(r.description);
        const auto* spec = std::get_if<TTKSpec>(&input);
        if (!spec) return false;
        if (is_lorenz_form(*spec)) return true;
        return include_mirrors && is_lorenz_form(mirror(*spec));
    } catch (const Error&) {
        return false;  // unparsable descriptions are simply not Lorenz
    }
}

/// One tetrahedra class of the census: the records are the knot complements;
/// the manifold total for the class comes from the census metadata.
struct CensusGroup {
    int tet_count = 0;
    long long manifold_count = 0;
    std::vector<CensusRecord> records;
};

struct StatsRow {
    int tet_count = 0;
    long long manifolds = 0;
    long long knots = 0;
};

struct StatsTable {
    std::vector<StatsRow> rows;
    long long total_manifolds = 0;
    long long total_knots = 0;
};

inline StatsTable stats_table(const std::vector<CensusGroup>& groups) {
    StatsTable t;
    for (const auto& g : groups) {
        StatsRow row{g.tet_count, g.manifold_count, static_cast<long long>(g.records.size())};
        t.total_manifolds += row.manifolds;
        t.total_knots += row.knots;
        t.rows.push_back(row);
    }
    std::sort(t.rows.begin(), t.rows.end(),
              [](const StatsRow& a, const StatsRow& b) { return a.tet_count < b.tet_count; });
    return t;
}

struct LorenzRow {
    int tet_count = 0;
    long long knots = 0;
    long long lorenz = 0;
    long long lorenz_with_mirrors = 0;
};

struct LorenzTable {
    std::vector<LorenzRow> rows;
    long long total_knots = 0;
    long long total_lorenz = 0;
    long long total_lorenz_with_mirrors = 0;
};

inline LorenzTable lorenz_count_table(const std::vector<CensusGroup>& groups) {
    LorenzTable t;
    for (const auto& g : groups) {
        LorenzRow row;
        row.tet_count = g.tet_count;
        row.knots = static_cast<long long>(g.records.size());
        for (const auto& r : g.records) {
            if (is_lorenz_record(r, false)) ++row.lorenz;
            if (is_lorenz_record(r, true)) ++row.lorenz_with_mirrors;
        }
        t.total_knots += row.knots;
        t.total_lorenz += row.lorenz;
        t.total_lorenz_with_mirrors += row.lorenz_with_mirrors;
        t.rows.push_back(row);
    }
    std::sort(t.rows.begin(), t.rows.end(),
              [](const LorenzRow& a, const LorenzRow& b) { return a.tet_count < b.tet_count; });
    return t;
}

// ---------------------------------------------------------------------------
// Table rendering
// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_aligned(const std::vector<std::vector<std::string>>& cells) {
    std::vector<std::size_t> width;
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (width.size() <= j) width.resize(j + 1, 0);
            width[j] = std::max(width[j], row[j].size());
        }
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << "  ";
            os << std::string(width[j] - row[j].size(), ' ') << row[j];
        }
        os << '\n';
    }
    return os.str();
}

inline std::string render_csv(const std::vector<std::vector<std::string>>& cells) {
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << row[j];
        }
        os << '\n';
    }
    return os.str();
}

inline std::vector<std::vector<std::string>> stats_cells(const StatsTable& t) {
    std::vector<std::vector<std::string>> cells{{"tetrahedra", "manifolds", "knots"}};
    for (const auto& r : t.rows)
        cells.push_back({std::to_string(r.tet_count), std::to_string(r.manifolds),
                         std::to_string(r.knots)});
    cells.push_back(
        {"total", std::to_string(t.total_manifolds), std::to_string(t.total_knots)});
    return cells;
}

inline std::vector<std::vector<std::string>> lorenz_cells(const LorenzTable& t) {
    std::vector<std::vector<std::string>> cells{
        {"tetrahedra", "knots", "lorenz", "lorenz+mirrors"}};
    for (const auto& r : t.rows)
        cells.push_back({std::to_string(r.tet_count), std::to_string(r.knots),
                         std::to_string(r.lorenz), std::to_string(r.lorenz_with_mirrors)});
    cells.push_back({"total", std::to_string(t.total_knots), std::to_string(t.total_lorenz),
                     std::to_string(t.total_lorenz_with_mirrors)});
    return cells;
}

}  // namespace detail

inline std::string render_text(const StatsTable& t) { return detail::render_aligned(detail::stats_cells(t)); }
inline std::string render_csv(const StatsTable& t) { return detail::render_csv(detail::stats_cells(t)); }
inline std::string render_text(const LorenzTable& t) { return detail::render_aligned(detail::lorenz_cells(t)); }
inline std::string render_csv(const LorenzTable& t) { return detail::render_csv(detail::lorenz_cells(t)); }

// ---------------------------------------------------------------------------
// Census manifest files
// ---------------------------------------------------------------------------
//
// A manifest names one census file per tetrahedra class:
//   tet_count,manifold_count,census_file
// Paths are resolved relative to the manifest's directory.

inline std::vector<CensusGroup> load_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw Error(ErrorKind::BadField, "cannot open manifest " + manifest_path.string());
    std::vector<CensusGroup> groups;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto fields = detail::split_fields(t, ',');
        if (fields.size() != 3)
            throw Error(ErrorKind::MissingColumn, "manifest line " + std::to_string(line_number) +
                                                      ": expected 3 fields, got " +
                                                      std::to_string(fields.size()));
        auto tet = detail::parse_int(fields[0]);
        auto manifolds = detail::parse_int(fields[1]);
        if (!tet || !manifolds || *manifolds < 0)
            throw Error(ErrorKind::BadField,
                        "manifest line " + std::to_string(line_number) + ": bad counts");
        CensusGroup g;
        g.tet_count = static_cast<int>(*tet);
        g.manifold_count = static_cast<long long>(*manifolds);
        auto file = manifest_path.parent_path() / std::string(detail::trim(fields[2]));
        std::ifstream records(file);
        if (!records)
            throw Error(ErrorKind::BadField, "manifest line " + std::to_string(line_number) +
                                                 ": cannot open " + file.string());
        g.records = parse_census_file(records);
        groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace kcensus
