#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "kcensus/diagram.hpp"
#include "kcensus/laurent.hpp"

namespace kcensus {

/// Loop value of the Kauffman bracket: delta = -A^2 - A^-2.
inline LaurentPolynomial bracket_delta() {
    LaurentPolynomial d;
    d.add_term(2, -1);
    d.add_term(-2, -1);
    return d;
}

namespace detail {

/// delta^k for k >= 0, cached per call site.
class DeltaPowers {
public:
    const LaurentPolynomial& operator[](int k) {
        while (static_cast<int>(powers_.size()) <= k)
            powers_.push_back(powers_.back() * bracket_delta());
        return powers_[k];
    }

private:
    std::vector<LaurentPolynomial> powers_{LaurentPolynomial::one()};
};

inline LaurentPolynomial bracket_of_crossingless(int free_loops) {
    DeltaPowers powers;
    return free_loops > 0 ? powers[free_loops - 1] : LaurentPolynomial::one();
}

/// The two smoothings of a crossing, as slot pairings.  The A-smoothing
/// joins the incoming under-strand to the slot clockwise from it; with slots
/// counterclockwise from under-in this pairs (0,3) and (1,2).
inline const std::array<std::pair<int, int>, 2>& smoothing_arcs(bool a_smoothing) {
    static const std::array<std::pair<int, int>, 2> kA{{{0, 3}, {1, 2}}};
    static const std::array<std::pair<int, int>, 2> kB{{{0, 1}, {2, 3}}};
    return a_smoothing ? kA : kB;
}

}  // namespace detail

/// Kauffman bracket by direct enumeration of all 2^n smoothing states.
/// Exponential: refuse diagrams above max_crossings.
inline LaurentPolynomial kauffman_bracket_naive(const PlanarDiagram& pd, int max_crossings = 22) {
    const int n = static_cast<int>(pd.crossings.size());
    if (n > max_crossings)
        throw Error(ErrorKind::TooLarge, "state enumeration over " + std::to_string(n) +
                                             " crossings exceeds the limit of " +
                                             std::to_string(max_crossings));
    if (n == 0) return detail::bracket_of_crossingless(pd.free_loops);

    std::map<int, int> edge_index;
    for (const auto& c : pd.crossings)
        for (int e : c.edges) edge_index.emplace(e, static_cast<int>(edge_index.size()));
    const int edges = static_cast<int>(edge_index.size());

    detail::DeltaPowers delta_pow;
    LaurentPolynomial total;
    std::vector<int> parent(edges);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int exponent = 0;
        for (int i = 0; i < n; ++i) {
            const bool a_smoothing = (mask >> i) & 1u;
            exponent += a_smoothing ? 1 : -1;
            for (auto [s, t] : detail::smoothing_arcs(a_smoothing)) {
                int u = find(edge_index.at(pd.crossings[i].edges[s]));
                int v = find(edge_index.at(pd.crossings[i].edges[t]));
                if (u != v) parent[u] = v;
            }
        }
        int circles = pd.free_loops;
        for (int e = 0; e < edges; ++e)
            if (find(e) == e) ++circles;
        LaurentPolynomial term = delta_pow[circles - 1];
        term.shift_multiply(exponent, 1);
        total += term;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Tangle contraction
// ---------------------------------------------------------------------------

namespace detail {

/// Pick a crossing order that keeps the set of half-processed edges small.
/// Greedy: always process the crossing that minimizes the next frontier.
inline std::vector<int> contraction_order(const PlanarDiagram& pd, int max_frontier) {
    const int n = static_cast<int>(pd.crossings.size());
    std::vector<int> order;
    std::vector<bool> done(n, false);
    std::set<int> open;

    auto ends_here = [&](int crossing, int edge) {
        int k = 0;
        for (int e : pd.crossings[crossing].edges)
            if (e == edge) ++k;
        return k;
    };
    auto frontier_after = [&](int crossing) {
        std::set<int> next = open;
        std::set<int> edges(pd.crossings[crossing].edges.begin(), pd.crossings[crossing].edges.end());
        for (int e : edges) {
            if (ends_here(crossing, e) == 2) continue;  // opens and closes at once
            if (!next.erase(e)) next.insert(e);
        }
        return next;
    };

    for (int step = 0; step < n; ++step) {
        int best = -1;
        std::size_t best_size = 0;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            std::size_t size = frontier_after(i).size();
            if (best < 0 || size < best_size) {
                best = i;
                best_size = size;
            }
        }
        if (static_cast<int>(best_size) > max_frontier)
            throw Error(ErrorKind::TooLarge,
                        "contraction frontier exceeds " + std::to_string(max_frontier) + " strands");
        open = frontier_after(best);
        done[best] = true;
        order.push_back(best);
    }
    return order;
}

}  // namespace detail

/// Kauffman bracket by contracting one crossing at a time.  The dynamic
/// programming state is the matching the smoothed tangle induces on
/// half-processed edges, so the cost is driven by the diagram's width rather
/// than 2^n.  Agrees exactly with kauffman_bracket_naive.
inline LaurentPolynomial kauffman_bracket(const PlanarDiagram& pd, int max_frontier = 32) {
    const int n = static_cast<int>(pd.crossings.size());
    if (n == 0) return detail::bracket_of_crossingless(pd.free_loops);

    const auto order = detail::contraction_order(pd, max_frontier);

    using Matching = std::vector<std::pair<int, int>>;
    std::map<Matching, LaurentPolynomial> states;
    states.emplace(Matching{}, LaurentPolynomial::one());

    detail::DeltaPowers delta_pow;
    for (int ci : order) {
        const Crossing& c = pd.crossings[ci];

        // Which slots carry the same edge twice (a loop at this crossing)?
        std::array<int, 4> loop_partner{-1, -1, -1, -1};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (c.edges[i] == c.edges[j]) {
                    loop_partner[i] = j;
                    loop_partner[j] = i;
                }

        std::map<Matching, LaurentPolynomial> next_states;
        for (const auto& [matching, coeff] : states) {
            for (int choice = 0; choice < 2; ++choice) {
                const bool a_smoothing = choice == 0;

                // Node ids: 0..3 the slots of c, 4+i the strand ports of
                // edges (open tokens and new half-edges).
                std::map<int, int> port;  // edge id -> node id
                auto port_of = [&](int e) {
                    auto it = port.find(e);
                    if (it == port.end())
                        it = port.emplace(e, 4 + static_cast<int>(port.size())).first;
                    return it->second;
                };
                std::map<int, std::vector<int>> adj;
                auto link = [&](int u, int v) {
                    adj[u].push_back(v);
                    adj[v].push_back(u);
                };
                for (auto [s, t] : detail::smoothing_arcs(a_smoothing)) link(s, t);
                for (int s = 0; s < 4; ++s) {
                    if (loop_partner[s] >= 0) {
                        if (loop_partner[s] > s) link(s, loop_partner[s]);
                    } else {
                        link(s, port_of(c.edges[s]));
                    }
                }
                for (auto [u, v] : matching) link(port_of(u), port_of(v));

                // Ports of degree 1 end strands; walk port-to-port paths to
                // form the new matching, then count leftover closed circles.
                std::map<int, int> edge_of_port;
                for (auto [e, node] : port) edge_of_port[node] = e;
                std::set<int> visited;
                Matching next_matching;
                int circles = 0;
                for (const auto& [node, nbrs] : adj) {
                    if (nbrs.size() != 1 || visited.count(node)) continue;
                    visited.insert(node);
                    int prev = node, cur = nbrs[0];
                    while (adj.at(cur).size() == 2) {
                        visited.insert(cur);
                        const auto& nexts = adj.at(cur);
                        int step = (nexts[0] == prev) ? nexts[1] : nexts[0];
                        prev = cur;
                        cur = step;
                    }
                    visited.insert(cur);
                    int a = edge_of_port.at(node), b = edge_of_port.at(cur);
                    next_matching.emplace_back(std::min(a, b), std::max(a, b));
                }
                for (const auto& [node, nbrs] : adj) {
                    if (visited.count(node)) continue;
                    ++circles;
                    visited.insert(node);
                    int prev = node, cur = nbrs[0];
                    while (cur != node) {
                        visited.insert(cur);
                        const auto& nexts = adj.at(cur);
                        int step = (nexts[0] == prev) ? nexts[1] : nexts[0];
                        prev = cur;
                        cur = step;
                    }
                }

                std::sort(next_matching.begin(), next_matching.end());
                LaurentPolynomial contribution = coeff;
                contribution.shift_multiply(a_smoothing ? 1 : -1, 1);
                if (circles > 0) contribution *= delta_pow[circles];
                auto [it, inserted] = next_states.emplace(std::move(next_matching), contribution);
                if (!inserted) it->second += contribution;
            }
        }
        states = std::move(next_states);
    }

    // Everything is closed now: a single state with the empty matching whose
    // coefficient is delta * <D> before the free-loop factor.
    LaurentPolynomial total;
    for (const auto& [matching, coeff] : states) total += coeff;
    if (pd.free_loops > 0) total *= delta_pow[pd.free_loops];
    return total.divided_exact(bracket_delta());
}

// ---------------------------------------------------------------------------
// Jones polynomial
// ---------------------------------------------------------------------------

/// Writhe-normalized bracket (-A)^(-3w) <D> in the variable A, after
/// crossing-reducing simplification.
inline LaurentPolynomial normalized_bracket(const PlanarDiagram& diagram) {
    PlanarDiagram pd = simplify(diagram);
    LaurentPolynomial br = kauffman_bracket(pd);
    const int w = writhe(pd);
    br.shift_multiply(-3 * w, (w % 2 == 0) ? 1 : -1);
    return br;
}

/// Substitute A = t^(-1/4) in a normalized bracket.  Valid for knots, where
/// every exponent of A is a multiple of 4; links with an even number of
/// components land at half-integer powers of t.
inline LaurentPolynomial bracket_to_jones(const LaurentPolynomial& normalized) {
    LaurentPolynomial out;
    for (const auto& [e, c] : normalized.terms()) {
        if (e % 4 != 0)
            throw Error(ErrorKind::FractionalExponent,
                        "A-exponent " + std::to_string(e) + " is not a multiple of 4");
        out.add_term(-e / 4, c);
    }
    return out;
}

/// Jones polynomial in t.
inline LaurentPolynomial jones(const PlanarDiagram& pd) {
    return bracket_to_jones(normalized_bracket(pd));
}
inline LaurentPolynomial jones(const BraidWord& w) { return jones(braid_closure_pd(w)); }
inline LaurentPolynomial jones(const TTKSpec& spec) { return jones(build_ttk(spec)); }

inline DegreeSpanEntry jones_degree_span(const PlanarDiagram& pd) {
    return format_jones_entry(jones(pd));
}

}  // namespace kcensus
