#pragma once

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kcensus/bigint.hpp"
#include "kcensus/cusp.hpp"
#include "kcensus/error.hpp"

namespace kcensus {

/// Dense integer matrix, row-major, arbitrary-precision entries.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> entries;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c, 0) {}

    BigInt& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
    const BigInt& at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const IntMatrix&) const = default;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("matrix size mismatch");
        IntMatrix r(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                const BigInt& aik = a.at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                if (j) os << ' ';
                os << at(i, j);
            }
            os << '\n';
        }
        return os.str();
    }
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant needs a square matrix");
    const int n = m.rows;
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

struct SmithResult {
    IntMatrix u;  // rows x rows, unimodular
    IntMatrix d;  // diagonal, d1 | d2 | ..., nonnegative
    IntMatrix v;  // cols x cols, unimodular
};

/// Smith normal form with transforms: u * a * v = d.  Pivoting always takes
/// the smallest nonzero magnitude in the remaining submatrix, which keeps
/// intermediate entries from exploding.
inline SmithResult smith_normal_form(const IntMatrix& a) {
    SmithResult r{IntMatrix::identity(a.rows), a, IntMatrix::identity(a.cols)};
    IntMatrix& d = r.d;

    auto swap_rows = [&](int x, int y) {
        if (x == y) return;
        for (int j = 0; j < d.cols; ++j) std::swap(d.at(x, j), d.at(y, j));
        for (int j = 0; j < r.u.cols; ++j) std::swap(r.u.at(x, j), r.u.at(y, j));
    };
    auto swap_cols = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, x), d.at(i, y));
        for (int i = 0; i < r.v.rows; ++i) std::swap(r.v.at(i, x), r.v.at(i, y));
    };
    auto add_row = [&](int dst, int src, const BigInt& k) {  // row dst += k * row src
        for (int j = 0; j < d.cols; ++j) d.at(dst, j) += k * d.at(src, j);
        for (int j = 0; j < r.u.cols; ++j) r.u.at(dst, j) += k * r.u.at(src, j);
    };
    auto add_col = [&](int dst, int src, const BigInt& k) {  // col dst += k * col src
        for (int i = 0; i < d.rows; ++i) d.at(i, dst) += k * d.at(i, src);
        for (int i = 0; i < r.v.rows; ++i) r.v.at(i, dst) += k * r.v.at(i, src);
    };

    const int steps = std::min(d.rows, d.cols);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero magnitude in the trailing submatrix.
            int pi = -1, pj = -1;
            for (int i = t; i < d.rows; ++i)
                for (int j = t; j < d.cols; ++j) {
                    if (d.at(i, j) == 0) continue;
                    if (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) {
                t = steps;  // trailing submatrix is zero: done
                break;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);

            // Reduce the rest of column t and row t modulo the pivot.
            bool clean = true;
            for (int i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t) == 0) continue;
                add_row(i, t, -(d.at(i, t) / d.at(t, t)));
                if (d.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j) == 0) continue;
                add_col(j, t, -(d.at(t, j) / d.at(t, t)));
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // remainders are smaller pivots; go again

            // The pivot must divide everything that comes after it.
            int bad_row = -1;
            for (int i = t + 1; i < d.rows && bad_row < 0; ++i)
                for (int j = t + 1; j < d.cols; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row >= 0) {
                add_row(t, bad_row, 1);  // drag the offending row in and re-reduce
                continue;
            }
            break;
        }
        if (t >= steps) break;
    }
    for (int t = 0; t < steps; ++t)
        if (d.at(t, t) < 0) add_row(t, t, -2);  // negate the row
    return r;
}

// ---------------------------------------------------------------------------
// First homology of Dehn fillings
// ---------------------------------------------------------------------------

/// Finitely generated abelian group: Z^rank + Z/d1 + ... with d1 | d2 | ...
struct AbelianGroup {
    int rank = 0;
    std::vector<BigInt> torsion;

    bool operator==(const AbelianGroup&) const = default;
};

inline bool is_trivial(const AbelianGroup& g) { return g.rank == 0 && g.torsion.empty(); }

inline std::string to_string(const AbelianGroup& g) {
    if (is_trivial(g)) return "0";
    std::ostringstream os;
    bool first = true;
    if (g.rank > 0) {
        os << "Z";
        if (g.rank > 1) os << "^" << g.rank;
        first = false;
    }
    for (const auto& d : g.torsion) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

/// Cokernel of the matrix whose columns are relators on `rows` generators.
inline AbelianGroup cokernel(const IntMatrix& relations) {
    auto snf = smith_normal_form(relations);
    AbelianGroup g;
    int nonzero = 0;
    for (int t = 0; t < std::min(snf.d.rows, snf.d.cols); ++t) {
        const BigInt& dt = snf.d.at(t, t);
        if (dt == 0) continue;
        ++nonzero;
        if (dt > 1) g.torsion.push_back(dt);
    }
    g.rank = relations.rows - nonzero;
    return g;
}

/// H1 of a one-cusped manifold: relator columns on g generators plus the
/// peripheral classes used to build filling relations.
struct PeripheralPresentation {
    IntMatrix relations;  // g rows, one column per relator
    std::vector<BigInt> meridian_class;
    std::vector<BigInt> longitude_class;
};

inline void validate(const PeripheralPresentation& p) {
    if (static_cast<int>(p.meridian_class.size()) != p.relations.rows ||
        static_cast<int>(p.longitude_class.size()) != p.relations.rows)
        throw std::invalid_argument("peripheral class length must equal the generator count");
}

/// The standard knot-exterior presentation: H1 = Z generated by the meridian,
/// nullhomologous longitude.
inline PeripheralPresentation knot_exterior_presentation() {
    PeripheralPresentation p;
    p.relations = IntMatrix(1, 0);
    p.meridian_class = {1};
    p.longitude_class = {0};
    return p;
}

/// First homology after Dehn filling along the slope: adjoin the relation
/// p * meridian + q * longitude.
inline AbelianGroup filled_homology(const PeripheralPresentation& pres, const Slope& s) {
    validate(pres);
    const int g = pres.relations.rows;
    IntMatrix m(g, pres.relations.cols + 1);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < pres.relations.cols; ++j) m.at(i, j) = pres.relations.at(i, j);
        m.at(i, pres.relations.cols) =
            BigInt(s.p) * pres.meridian_class[i] + BigInt(s.q) * pres.longitude_class[i];
    }
    return cokernel(m);
}

}  // namespace kcensus
