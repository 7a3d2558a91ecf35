#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "kcensus/cusp.hpp"
#include "kcensus/rand.hpp"

using namespace kcensus;

namespace {

/// Independent oracle: scan every primitive (p, q) in a large box.
std::vector<Slope> brute_force_slopes(const TranslationPair& t, double bound, int box = 30) {
    std::vector<Slope> out;
    for (int q = 0; q <= box; ++q)
        for (int p = -box; p <= box; ++p) {
            if (q == 0 && p != 1) continue;
            if (p == 0 && q == 0) continue;
            if (std::gcd(std::abs(p), q) != 1) continue;
            Slope s{p, q};
            if (slope_length(t, s) <= bound) out.push_back(s);
        }
    std::sort(out.begin(), out.end(), [](const Slope& a, const Slope& b) {
        return std::pair(a.q, a.p) < std::pair(b.q, b.p);
    });
    return out;
}

TranslationPair random_region_basis(SplitMix64& rng) {
    const double s3h = std::sqrt(3.0) / 2.0;
    for (;;) {
        double m = rng.uniform(1.0, 4.0);
        double a = rng.uniform(-2.0, 2.0);
        double b = rng.uniform(s3h, 8.0);
        if (std::abs(a) <= m / 2 && b >= std::max(s3h * m, 3.35 / m)) {
            TranslationPair t;
            t.m = m;
            t.l = {a, b};
            t.reduced = true;
            return t;
        }
    }
}

}  // namespace

TEST_CASE("slopes are canonical primitive pairs", "[cusp]") {
    CHECK(make_slope(1, 0) == Slope{1, 0});
    CHECK(make_slope(-1, 0) == Slope{1, 0});   // (p,q) ~ (-p,-q)
    CHECK(make_slope(3, -2) == Slope{-3, 2});
    CHECK(make_slope(0, -1) == Slope{0, 1});

    CHECK_THROWS_AS(make_slope(0, 0), Error);
    CHECK_THROWS_AS(make_slope(2, 4), Error);
    CHECK_THROWS_AS(make_slope(2, 0), Error);
}

TEST_CASE("slope length is the flat-metric norm", "[cusp]") {
    TranslationPair t;
    t.m = 1.0;
    t.l = {0.0, 1.0};
    CHECK(slope_length(t, {1, 0}) == Catch::Approx(1.0));
    CHECK(slope_length(t, {0, 1}) == Catch::Approx(1.0));
    CHECK(slope_length(t, {1, 1}) == Catch::Approx(std::sqrt(2.0)));
    CHECK(slope_length(t, {-3, 2}) == Catch::Approx(std::sqrt(13.0)));
}

TEST_CASE("shortest-basis test checks both norm conditions", "[cusp]") {
    TranslationPair good;
    good.m = 1.0;
    good.l = {0.3, 1.8};
    CHECK(is_shortest_basis(good));

    TranslationPair long_m;
    long_m.m = 3.0;
    long_m.l = {0.0, 1.0};
    CHECK_FALSE(is_shortest_basis(long_m));  // |l| < m

    TranslationPair shearable;
    shearable.m = 1.0;
    shearable.l = {0.9, 1.0};
    CHECK_FALSE(is_shortest_basis(shearable));  // |m - l| < |l|
}

TEST_CASE("basis reduction reproduces the worked examples", "[cusp]") {
    TranslationPair a;
    a.m = 1.0;
    a.l = {5.0, 2.0};
    TranslationPair ra = reduce_basis(a);
    CHECK(ra.m == Catch::Approx(1.0));
    CHECK(ra.l.real() == Catch::Approx(0.0).margin(1e-12));
    CHECK(ra.l.imag() == Catch::Approx(2.0));
    CHECK(ra.reduced);

    TranslationPair b;
    b.m = 3.0;
    b.l = {0.0, 1.0};
    TranslationPair rb = reduce_basis(b);
    CHECK(rb.m == Catch::Approx(1.0));
    CHECK(rb.l.real() == Catch::Approx(0.0).margin(1e-12));
    CHECK(rb.l.imag() == Catch::Approx(3.0));

    TranslationPair c;
    c.m = 1.0;
    c.l = {0.3, 1.8};
    TranslationPair rc = reduce_basis(c);
    CHECK(rc.m == Catch::Approx(1.0));
    CHECK(rc.l.real() == Catch::Approx(0.3));
    CHECK(rc.l.imag() == Catch::Approx(1.8));
}

TEST_CASE("reduction rejects degenerate lattices", "[cusp]") {
    TranslationPair real_l;
    real_l.m = 1.0;
    real_l.l = {2.5, 0.0};
    CHECK_THROWS_AS(reduce_basis(real_l), Error);

    TranslationPair zero;
    zero.m = 0.0;
    zero.l = {0.0, 1.0};
    CHECK_THROWS_AS(reduce_basis(zero), Error);
}

TEST_CASE("reduction always lands in the shortest-basis region", "[cusp]") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        TranslationPair t;
        t.m = rng.uniform(0.2, 5.0);
        t.l = {rng.uniform(-20.0, 20.0), rng.uniform(0.05, 10.0)};
        TranslationPair r = reduce_basis(t);
        INFO("m=" << t.m << " l=" << t.l.real() << "+" << t.l.imag() << "i");
        CHECK(is_shortest_basis(r, 1e-7));
        // Covolume (lattice determinant) is preserved by unimodular changes.
        CHECK(r.m * r.l.imag() == Catch::Approx(t.m * std::abs(t.l.imag())).epsilon(1e-9));
    }
}

TEST_CASE("half-integer shear projections terminate", "[cusp]") {
    TranslationPair t;
    t.m = 1.0;
    t.l = {0.5, 2.0};  // projection coefficient exactly 1/2
    TranslationPair r = reduce_basis(t);
    CHECK(is_shortest_basis(r));
    CHECK(r.m == Catch::Approx(1.0));
}

TEST_CASE("the worked slope example yields exactly ten slopes", "[cusp]") {
    TranslationPair t;
    t.m = 1.0;
    t.l = {0.0, 3.35};
    t.reduced = true;
    auto slopes = enumerate_short_slopes(t, 6.0);
    REQUIRE(slopes.size() == 10);
    CHECK(slopes.front() == Slope{1, 0});
    for (int p = -4; p <= 4; ++p) CHECK(slopes[static_cast<std::size_t>(p + 5)] == Slope{p, 1});
}

TEST_CASE("enumeration requires a reduced basis and sane lattice", "[cusp]") {
    TranslationPair t;
    t.m = 1.0;
    t.l = {0.0, 3.35};
    CHECK_THROWS_AS(enumerate_short_slopes(t, 6.0), Error);  // reduced flag unset

    TranslationPair degenerate;
    degenerate.m = -1.0;
    degenerate.l = {0.0, 3.35};
    degenerate.reduced = true;
    CHECK_THROWS_AS(enumerate_short_slopes(degenerate, 6.0), Error);
}

TEST_CASE("enumeration matches brute force on random reduced bases", "[cusp]") {
    SplitMix64 rng(47);
    for (int trial = 0; trial < 2000; ++trial) {
        TranslationPair t = random_region_basis(rng);
        auto fast = enumerate_short_slopes(t, 6.0);
        auto slow = brute_force_slopes(t, 6.0);
        INFO("m=" << t.m << " l=" << t.l.real() << "+" << t.l.imag() << "i");
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
    }
}

TEST_CASE("enumeration output is sorted and free of duplicates", "[cusp]") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        TranslationPair t = random_region_basis(rng);
        auto slopes = enumerate_short_slopes(t, 6.0);
        for (std::size_t i = 1; i < slopes.size(); ++i)
            CHECK(std::pair(slopes[i - 1].q, slopes[i - 1].p) < std::pair(slopes[i].q, slopes[i].p));
    }
}

TEST_CASE("the audit never sees out-of-bound slopes", "[cusp]") {
    AuditReport r = audit_lemma_bounds(5000, 12345);
    CHECK(r.samples == 5000);
    CHECK(r.seed == 12345);
    CHECK(r.violations == 0);
    CHECK(r.max_abs_p <= 7);
    CHECK(r.max_abs_q <= 3);
    CHECK(r.min_b > 1.7);
    CHECK(r.min_b_slack >= -1e-9);
    REQUIRE(r.tightest.size() == 5);
    for (std::size_t i = 1; i < r.tightest.size(); ++i)
        CHECK(r.tightest[i - 1].margin <= r.tightest[i].margin);
    for (const auto& m : r.tightest) CHECK(m.margin == Catch::Approx(6.0 - m.length));
}

TEST_CASE("audit runs are deterministic in the seed", "[cusp]") {
    AuditReport a = audit_lemma_bounds(2000, 99);
    AuditReport b = audit_lemma_bounds(2000, 99);
    CHECK(a.min_b == b.min_b);
    CHECK(a.min_b_slack == b.min_b_slack);
    CHECK(a.max_abs_p == b.max_abs_p);
    CHECK(a.max_abs_q == b.max_abs_q);
    REQUIRE(a.tightest.size() == b.tightest.size());
    for (std::size_t i = 0; i < a.tightest.size(); ++i) {
        CHECK(a.tightest[i].slope == b.tightest[i].slope);
        CHECK(a.tightest[i].length == b.tightest[i].length);
    }

    AuditReport c = audit_lemma_bounds(2000, 100);
    CHECK(a.min_b != c.min_b);  // different seed, different samples
}

TEST_CASE("audit reports serialize every summary line", "[cusp]") {
    std::string text = to_string(audit_lemma_bounds(500, 7));
    for (const char* needle :
         {"samples: 500", "seed: 7", "violations: 0", "max |p|:", "max |q|:", "min b:",
          "min b - sqrt(3)m/2:", "tightest margins:"})
        CHECK(text.find(needle) != std::string::npos);
}
