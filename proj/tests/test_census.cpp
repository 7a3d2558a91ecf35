#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "kcensus/census.hpp"

using namespace kcensus;

namespace {

CensusRecord rec(std::string id, double volume, double systole,
                 std::optional<double> second_geodesic = std::nullopt,
                 std::string description = "") {
    CensusRecord r;
    r.name = "pending";
    r.census_id = std::move(id);
    r.volume = volume;
    r.systole = systole;
    r.second_geodesic = second_geodesic;
    r.description = std::move(description);
    return r;
}

std::vector<std::string> names(const std::vector<CensusRecord>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.census_id);
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("kcensus_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path write(const std::string& name, const std::string& text) const {
        auto p = path / name;
        std::ofstream(p) << text;
        return p;
    }
};

}  // namespace

TEST_CASE("records sort by volume first", "[census]") {
    auto sorted = sort_and_name({rec("b", 3.5, 1.0), rec("a", 2.0, 0.5), rec("c", 2.5, 2.0)}, 8);
    CHECK(names(sorted) == std::vector<std::string>{"a", "c", "b"});
    CHECK(sorted[0].name == "k8_1");
    CHECK(sorted[1].name == "k8_2");
    CHECK(sorted[2].name == "k8_3");
}

TEST_CASE("volume ties break by descending systole", "[census]") {
    auto sorted = sort_and_name({rec("small", 2.0, 0.5), rec("large", 2.0, 1.5)}, 7);
    CHECK(names(sorted) == std::vector<std::string>{"large", "small"});
    CHECK(sorted[0].name == "k7_1");
}

TEST_CASE("full ties break by descending second geodesic, absent last", "[census]") {
    auto sorted = sort_and_name({rec("none", 2.0, 1.0), rec("short", 2.0, 1.0, 1.1),
                                 rec("long", 2.0, 1.0, 2.2)},
                                8);
    CHECK(names(sorted) == std::vector<std::string>{"long", "short", "none"});
}

TEST_CASE("complete ties preserve census id order", "[census]") {
    auto sorted = sort_and_name({rec("z9", 2.0, 1.0, 1.5), rec("a1", 2.0, 1.0, 1.5)}, 8);
    CHECK(names(sorted) == std::vector<std::string>{"a1", "z9"});
}

TEST_CASE("volumes compare after rounding to ten decimals", "[census]") {
    // Same to 10 decimals: the systole tie-break decides.
    auto tied = sort_and_name(
        {rec("lo_sys", 2.00000000001, 0.5), rec("hi_sys", 2.00000000004, 1.5)}, 8);
    CHECK(names(tied) == std::vector<std::string>{"hi_sys", "lo_sys"});

    // Distinct at the 10th decimal: volume order wins despite systoles.
    auto split = sort_and_name({rec("big", 2.0000000002, 9.9), rec("small", 2.0000000001, 0.1)}, 8);
    CHECK(names(split) == std::vector<std::string>{"small", "big"});
}

TEST_CASE("sorting requires volume and systole", "[census]") {
    CensusRecord r = rec("a", 2.0, 1.0);
    r.systole.reset();
    try {
        sort_and_name({r}, 8);
        FAIL("expected MissingField");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingField);
    }
}

TEST_CASE("Lorenz classification parses the description", "[census]") {
    CHECK(is_lorenz_record(rec("a", 2, 1, {}, "T(5,2,3,4)"), false));
    CHECK(is_lorenz_record(rec("a", 2, 1, {}, "T(3,1)"), false));
    CHECK_FALSE(is_lorenz_record(rec("a", 2, 1, {}, "T(5,2,3,-4)"), false));
    CHECK_FALSE(is_lorenz_record(rec("a", 2, 1, {}, "T(5,-2,3,-4)"), false));
    CHECK_FALSE(is_lorenz_record(rec("a", 2, 1, {}, "4 6 2"), false));
    CHECK_FALSE(is_lorenz_record(rec("a", 2, 1, {}, ""), false));
    CHECK_FALSE(is_lorenz_record(rec("a", 2, 1, {}, "satellite"), false));

    // A mirror of a Lorenz form counts only when mirrors are included.
    CHECK(is_lorenz_record(rec("a", 2, 1, {}, "T(5,-2,3,-4)"), true));
    CHECK_FALSE(is_lorenz_record(rec("a", 2, 1, {}, "T(5,2,3,-4)"), true));
}

TEST_CASE("stats tables add a totals row", "[census]") {
    std::vector<CensusGroup> groups;
    groups.push_back({3, 9, {rec("a", 2, 1), rec("b", 3, 1)}});
    groups.push_back({4, 52, {rec("c", 2, 1)}});
    StatsTable t = stats_table(groups);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].tet_count == 3);
    CHECK(t.rows[0].manifolds == 9);
    CHECK(t.rows[0].knots == 2);
    CHECK(t.total_manifolds == 61);
    CHECK(t.total_knots == 3);

    std::string text = render_text(t);
    CHECK(text.find("total") != std::string::npos);
    std::string csv = render_csv(t);
    CHECK(csv.find("3,9,2") != std::string::npos);
    CHECK(csv.find("total,61,3") != std::string::npos);
}

TEST_CASE("Lorenz tables count strict and mirror-inclusive forms", "[census]") {
    std::vector<CensusGroup> groups;
    groups.push_back({5, 100,
                      {rec("a", 2, 1, {}, "T(5,2)"), rec("b", 3, 1, {}, "T(5,-2)"),
                       rec("c", 4, 1, {}, "T(5,2,3,-1)"), rec("d", 5, 1, {}, "no idea")}});
    LorenzTable t = lorenz_count_table(groups);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].knots == 4);
    CHECK(t.rows[0].lorenz == 1);               // only T(5,2)
    CHECK(t.rows[0].lorenz_with_mirrors == 2);  // plus T(5,-2)
    CHECK(t.total_knots == 4);
    CHECK(t.total_lorenz == 1);
    CHECK(t.total_lorenz_with_mirrors == 2);

    std::string csv = render_csv(t);
    CHECK(csv.find("5,4,1,2") != std::string::npos);
}

TEST_CASE("manifest loading reads groups and census files", "[census]") {
    TempDir dir;
    dir.write("three.csv",
              "k0, idA, 2.1, , , 0.5, , T(3;2), \n"
              "k0, idB, 2.2, , , 0.6, , T(5;2), \n");
    dir.write("four.csv", "k0, idC, 3.1, , , 0.7, , T(7;2), \n");
    auto manifest = dir.write("manifest.txt",
                              "# tet, manifolds, file\n"
                              "3, 9, three.csv\n"
                              "4, 52, four.csv\n");

    auto groups = load_manifest(manifest);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].tet_count == 3);
    CHECK(groups[0].manifold_count == 9);
    CHECK(groups[0].records.size() == 2);
    CHECK(groups[1].records.size() == 1);

    StatsTable t = stats_table(groups);
    CHECK(t.total_manifolds == 61);
    CHECK(t.total_knots == 3);
}

TEST_CASE("manifest errors identify the offending line", "[census]") {
    TempDir dir;
    auto missing = dir.write("m1.txt", "3, 9, nope.csv\n");
    CHECK_THROWS_AS(load_manifest(missing), Error);

    auto short_line = dir.write("m2.txt", "3, 9\n");
    try {
        load_manifest(short_line);
        FAIL("expected MissingColumn");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingColumn);
    }

    auto bad_num = dir.write("m3.txt", "three, 9, x.csv\n");
    CHECK_THROWS_AS(load_manifest(bad_num), Error);
}
