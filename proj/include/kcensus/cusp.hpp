#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kcensus/error.hpp"
#include "kcensus/rand.hpp"

namespace kcensus {

/// Translation lengths of a cusp torus basis: the first curve translates by
/// the positive real m, the second by the complex l = a + ib with b > 0.
struct TranslationPair {
    double m = 1.0;
    std::complex<double> l{0.0, 1.0};
    bool reduced = false;       // shortest-basis conditions verified
    bool maximal_cusp = false;  // m >= 1 and area m*b >= 3.35
};

/// A primitive curve class p*meridian + q*longitude in canonical form:
/// q > 0, or q = 0 and p = 1.
struct Slope {
    int p = 1;
    int q = 0;

    bool operator==(const Slope&) const = default;
    auto operator<=>(const Slope&) const = default;
};

inline Slope make_slope(int p, int q) {
    if (p == 0 && q == 0) throw Error(ErrorKind::SyntaxError, "slope (0,0) is not a curve");
    if (std::gcd(p, q) != 1)
        throw Error(ErrorKind::SyntaxError, "slope (" + std::to_string(p) + "," +
                                                std::to_string(q) + ") is not primitive");
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return Slope{p, q};
}

inline double slope_length(const TranslationPair& t, const Slope& s) {
    return std::abs(double(s.p) * t.m + double(s.q) * t.l);
}

constexpr double kCuspTolerance = 1e-9;

/// Shortest-basis test: |l| >= m and |m +- l| >= |l|, all within tolerance.
/// The second pair of conditions is equivalent to |Re l| <= m/2.
inline bool is_shortest_basis(const TranslationPair& t, double tol = kCuspTolerance) {
    if (!(t.m > 0) || !(t.l.imag() > 0)) return false;
    const double ll = std::abs(t.l);
    return ll >= t.m - tol && std::abs(t.m + t.l) >= ll - tol && std::abs(t.m - t.l) >= ll - tol;
}

/// Lagrange-Gauss reduction of the lattice spanned by (m, l), followed by
/// canonical normalization: rotate the shortest vector onto the positive real
/// axis, conjugate so the second vector points into the upper half plane.
/// The output lattice is the input lattice up to that isometry.
inline TranslationPair reduce_basis(const TranslationPair& t, double tol = kCuspTolerance) {
    std::complex<double> u(t.m, 0.0), v = t.l;
    const double scale = std::max(std::abs(u), std::abs(v));
    if (std::abs(u.real() * v.imag() - u.imag() * v.real()) <= tol * scale * scale)
        throw Error(ErrorKind::DegenerateLattice, "basis vectors are collinear");

    for (;;) {
        if (std::abs(v) < std::abs(u)) std::swap(u, v);
        // Project v on u and subtract the nearest integer multiple.  Half-way
        // ties round up so an exact +-m/2 offset cannot oscillate forever.
        const double coeff = (v * std::conj(u)).real() / std::norm(u);
        const double k = std::floor(coeff + 0.5);
        if (k == 0) break;
        v -= k * u;
    }

    TranslationPair out;
    out.m = std::abs(u);
    out.l = v * std::conj(u) / std::abs(u);  // rotate u to the positive real axis
    if (out.l.imag() < 0) out.l = std::conj(out.l);
    out.reduced = true;
    out.maximal_cusp = t.maximal_cusp;
    return out;
}

/// All canonical primitive slopes of length <= bound (inclusive), sorted by
/// (q, p).  The scan q ∈ [0, bound/b], p near -q·a/m is exhaustive because
/// |p·m + q·l|² = (p·m + q·a)² + (q·b)².
inline std::vector<Slope> enumerate_short_slopes(const TranslationPair& t, double bound = 6.0) {
    if (!t.reduced) throw Error(ErrorKind::NotReduced, "enumerate_short_slopes needs a reduced basis");
    const double a = t.l.real(), b = t.l.imag();
    if (!(t.m > 0) || !(b > 0))
        throw Error(ErrorKind::DegenerateLattice, "translation pair is degenerate");

    std::vector<Slope> out;
    const int q_max = static_cast<int>(std::floor(bound / b)) + 1;
    for (int q = 0; q <= q_max; ++q) {
        // |p*m + q*a| <= bound is necessary, so p lies within bound/m of
        // -q*a/m; the ranges below widen that window by one on each side and
        // leave the exact check to the length filter.
        const double center = -double(q) * a / t.m;
        const int p_lo = static_cast<int>(std::floor(center - bound / t.m - 1));
        const int p_hi = static_cast<int>(std::ceil(center + bound / t.m + 1));
        for (int p = p_lo; p <= p_hi; ++p) {
            if (q == 0 && p != 1) continue;
            if (std::gcd(p, q) != 1) continue;
            Slope s{p, q};
            if (slope_length(t, s) <= bound) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), [](const Slope& x, const Slope& y) {
        return std::pair(x.q, x.p) < std::pair(y.q, y.p);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Randomized audit of the exceptional-slope bounds
// ---------------------------------------------------------------------------

/// One slope record kept for reporting: where and how close to the length
/// bound it came.
struct AuditMargin {
    Slope slope;
    double length = 0;
    double margin = 0;  // bound - length

    bool operator==(const AuditMargin&) const = default;
};

struct AuditReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t violations = 0;  // slopes of length <= bound with |p| > 7 or |q| > 3
    int max_abs_p = 0;
    int max_abs_q = 0;
    double min_b = 0;             // smallest sampled b; the proof needs b > 1.7
    double min_b_slack = 0;       // smallest b - sqrt(3)m/2; the proof needs >= 0
    std::vector<AuditMargin> tightest;  // up to 5 slopes closest to the bound
};

/// Sample reduced maximal-cusp translation pairs uniformly from the region
/// {m in [1,4], |a| <= m/2, b in [max(sqrt(3)m/2, 3.35/m), 8]} and check that
/// every slope of length <= bound has |p| <= 7 and |q| <= 3.  Sampling is
/// per-index deterministic, so runs shard and reproduce exactly.
inline AuditReport audit_lemma_bounds(std::uint64_t sample_count, std::uint64_t seed,
                                      double bound = 6.0) {
    const double sqrt3_half = std::sqrt(3.0) / 2.0;
    AuditReport report;
    report.samples = sample_count;
    report.seed = seed;
    report.min_b = 8.0;
    report.min_b_slack = 8.0;

    auto keep_margin = [&](const Slope& s, double length) {
        AuditMargin m{s, length, bound - length};
        auto worse = [](const AuditMargin& x, const AuditMargin& y) {
            if (x.margin != y.margin) return x.margin < y.margin;
            return std::pair(x.slope.q, x.slope.p) < std::pair(y.slope.q, y.slope.p);
        };
        report.tightest.push_back(m);
        std::sort(report.tightest.begin(), report.tightest.end(), worse);
        if (report.tightest.size() > 5) report.tightest.pop_back();
    };

    for (std::uint64_t i = 0; i < sample_count; ++i) {
        SplitMix64 rng = per_sample_stream(seed, i);
        double m, a, b;
        for (;;) {  // rejection-sample the box down to the valid region
            m = rng.uniform(1.0, 4.0);
            a = rng.uniform(-2.0, 2.0);
            b = rng.uniform(sqrt3_half, 8.0);
            if (std::abs(a) <= m / 2 && b >= std::max(sqrt3_half * m, 3.35 / m)) break;
        }
        report.min_b = std::min(report.min_b, b);
        report.min_b_slack = std::min(report.min_b_slack, b - sqrt3_half * m);

        TranslationPair t;
        t.m = m;
        t.l = {a, b};
        t.reduced = true;
        t.maximal_cusp = true;
        for (const Slope& s : enumerate_short_slopes(t, bound)) {
            if (std::abs(s.p) > 7 || std::abs(s.q) > 3) ++report.violations;
            report.max_abs_p = std::max(report.max_abs_p, std::abs(s.p));
            report.max_abs_q = std::max(report.max_abs_q, std::abs(s.q));
            const double len = slope_length(t, s);
            if (report.tightest.size() < 5 || bound - len < report.tightest.back().margin)
                keep_margin(s, len);
        }
    }
    return report;
}

inline std::string to_string(const AuditReport& r) {
    std::ostringstream os;
    os << "samples: " << r.samples << "\n";
    os << "seed: " << r.seed << "\n";
    os << "violations: " << r.violations << "\n";
    os << "max |p|: " << r.max_abs_p << "\n";
    os << "max |q|: " << r.max_abs_q << "\n";
    os << "min b: " << r.min_b << "\n";
    os << "min b - sqrt(3)m/2: " << r.min_b_slack << "\n";
    os << "tightest margins:\n";
    for (const auto& m : r.tightest)
        os << "  (" << m.slope.p << "," << m.slope.q << ") length " << m.length << " margin "
           << m.margin << "\n";
    return os.str();
}

}  // namespace kcensus
