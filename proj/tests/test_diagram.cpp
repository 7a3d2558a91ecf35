#include <catch_amalgamated.hpp>

#include "kcensus/diagram.hpp"
#include "kcensus/rand.hpp"

using namespace kcensus;

namespace {

BraidWord random_word(SplitMix64& rng, int max_strands, int max_len) {
    int strands = static_cast<int>(rng.uniform_int(2, max_strands));
    std::vector<int> letters;
    int len = static_cast<int>(rng.uniform_int(0, max_len));
    for (int i = 0; i < len; ++i) {
        int l = static_cast<int>(rng.uniform_int(1, strands - 1));
        letters.push_back(rng.uniform() < 0.5 ? -l : l);
    }
    return make_braid_word(strands, letters);
}

}  // namespace

TEST_CASE("braid closures produce valid diagrams", "[diagram]") {
    PlanarDiagram pd = braid_closure_pd(make_braid_word(2, {1}));
    CHECK_NOTHROW(validate_pd(pd));
    CHECK(pd.crossings.size() == 1);
    CHECK(pd.free_loops == 0);
    CHECK(writhe(pd) == 1);
    CHECK(component_count(pd) == 1);
}

TEST_CASE("untouched strands close into free loops", "[diagram]") {
    PlanarDiagram pd = braid_closure_pd(make_braid_word(4, {1}));
    CHECK(pd.crossings.size() == 1);
    CHECK(pd.free_loops == 2);
    CHECK(component_count(pd) == 3);

    PlanarDiagram empty = braid_closure_pd(make_braid_word(3, {}));
    CHECK(empty.crossings.empty());
    CHECK(empty.free_loops == 3);
    CHECK(component_count(empty) == 3);
}

TEST_CASE("closure component count matches the permutation count", "[diagram]") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        BraidWord w = random_word(rng, 5, 12);
        CHECK(component_count(braid_closure_pd(w)) == closure_component_count(w));
    }
}

TEST_CASE("mirroring negates writhe and is an involution", "[diagram]") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        PlanarDiagram pd = braid_closure_pd(random_word(rng, 5, 10));
        PlanarDiagram m = mirror_pd(pd);
        CHECK_NOTHROW(validate_pd(m));
        CHECK(writhe(m) == -writhe(pd));
        CHECK(component_count(m) == component_count(pd));
        PlanarDiagram mm = normalize_edges(mirror_pd(m));
        PlanarDiagram base = normalize_edges(pd);
        CHECK(mm.crossings.size() == base.crossings.size());
        for (std::size_t i = 0; i < mm.crossings.size(); ++i) {
            CHECK(mm.crossings[i].edges == base.crossings[i].edges);
            CHECK(mm.crossings[i].sign == base.crossings[i].sign);
        }
    }
}

TEST_CASE("validation rejects malformed diagrams", "[diagram]") {
    PlanarDiagram bad;
    bad.crossings.push_back({{0, 1, 2, 3}, 1});
    CHECK_THROWS_AS(validate_pd(bad), std::invalid_argument);  // dangling edges

    PlanarDiagram dup;
    dup.crossings.push_back({{0, 0, 1, 1}, 2});  // bad sign
    CHECK_THROWS_AS(validate_pd(dup), std::invalid_argument);
}

TEST_CASE("a cancelling generator pair simplifies to free loops", "[diagram]") {
    PlanarDiagram pd = braid_closure_pd(make_braid_word(2, {1, -1}));
    PlanarDiagram s = simplify(pd);
    CHECK(s.crossings.empty());
    CHECK(s.free_loops == 2);
}

TEST_CASE("kinks are removed by simplification", "[diagram]") {
    // Stabilized trefoil braid: one extra crossing that is a pure kink in the closure.
    PlanarDiagram pd = braid_closure_pd(make_braid_word(3, {1, 1, 1, 2}));
    PlanarDiagram s = simplify(pd);
    CHECK(s.crossings.size() == 3);
    CHECK(component_count(s) == 1);
}

TEST_CASE("simplification preserves component count", "[diagram]") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        PlanarDiagram pd = braid_closure_pd(random_word(rng, 5, 12));
        PlanarDiagram s = simplify(pd);
        CHECK_NOTHROW(validate_pd(s));
        CHECK(component_count(s) == component_count(pd));
        CHECK(s.crossings.size() <= pd.crossings.size());
    }
}

TEST_CASE("the trefoil DT code realizes to a three-crossing diagram", "[diagram]") {
    PlanarDiagram pd = realize_dt(make_dt_code({4, 6, 2}));
    CHECK_NOTHROW(validate_pd(pd));
    CHECK(pd.crossings.size() == 3);
    CHECK(component_count(pd) == 1);
    CHECK(pd.free_loops == 0);
    CHECK(std::abs(writhe(pd)) == 3);
}

TEST_CASE("extraction recovers a realized code", "[diagram]") {
    for (const std::vector<int>& entries :
         {std::vector<int>{4, 6, 2}, {4, 6, 8, 2}, {6, 8, 10, 2, 4}, {4, 8, 10, 2, 6}}) {
        DTCode code = make_dt_code(entries);
        REQUIRE(is_realizable_dt(code));
        PlanarDiagram pd = realize_dt(code);
        auto codes = extract_dt_codes(pd);
        INFO("dt " << serialize_dt(code));
        CHECK(codes.count(entries) == 1);
    }
}

TEST_CASE("extraction enumerates every traversal of the diagram", "[diagram]") {
    PlanarDiagram pd = realize_dt(make_dt_code({4, 6, 2}));
    auto codes = extract_dt_codes(pd);
    // 3 odd starting choices x 2 directions, signs flip when the traversal
    // starts on the even-labelled passes.
    CHECK(codes.count({4, 6, 2}) == 1);
    CHECK(codes.count({-4, -6, -2}) == 1);
    DTCode canonical = extract_dt(pd);
    CHECK(canonical.entries == *codes.begin());
}

TEST_CASE("single-crossing codes realize as kinks", "[diagram]") {
    PlanarDiagram pd = realize_dt(make_dt_code({2}));
    CHECK(pd.crossings.size() == 1);
    CHECK(component_count(pd) == 1);
    auto codes = extract_dt_codes(pd);
    CHECK((codes.count({2}) == 1 || codes.count({-2}) == 1));
}

TEST_CASE("extraction requires a one-component diagram", "[diagram]") {
    // Violating the precondition is a programming error, not bad user input.
    PlanarDiagram link = braid_closure_pd(make_braid_word(2, {1, 1}));  // Hopf link
    CHECK_THROWS_AS(extract_dt(link), std::invalid_argument);

    PlanarDiagram loops;
    loops.free_loops = 1;
    CHECK_THROWS_AS(extract_dt(loops), std::invalid_argument);
}

TEST_CASE("realization rejects non-realizable codes", "[diagram]") {
    // Smallest non-realizable Dowker sequences appear at five crossings; this
    // is the lexicographically first one.
    DTCode bad = make_dt_code({4, 6, 8, 10, 2});
    CHECK_FALSE(is_realizable_dt(bad));
    try {
        realize_dt(bad);
        FAIL("expected NonRealizable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonRealizable);
    }
    CHECK(is_realizable_dt(make_dt_code({4, 8, 10, 2, 12, 6})));
}

TEST_CASE("realizing the negated code mirrors the diagram", "[diagram]") {
    DTCode code = make_dt_code({4, 6, 8, 2});
    std::vector<int> negated;
    for (int e : code.entries) negated.push_back(-e);
    PlanarDiagram pd = realize_dt(code);
    PlanarDiagram neg = realize_dt(make_dt_code(negated));
    auto mirrored = extract_dt_codes(mirror_pd(pd));
    auto direct = extract_dt_codes(neg);
    CHECK(mirrored == direct);
}
