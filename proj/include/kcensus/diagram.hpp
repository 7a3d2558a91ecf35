#pragma once

#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "kcensus/braid.hpp"
#include "kcensus/notation.hpp"

namespace kcensus {

// ---------------------------------------------------------------------------
// Planar diagrams
// ---------------------------------------------------------------------------

/// One crossing of an oriented link diagram.  edges lists the four incident
/// edge ids counterclockwise starting from the incoming under-strand, so a
/// positive crossing reads (under-in, over-in, under-out, over-out) and a
/// negative one (under-in, over-out, under-out, over-in).
struct Crossing {
    std::array<int, 4> edges{};
    int sign = 1;

    bool operator==(const Crossing&) const = default;
};

/// A link diagram: crossings plus the number of crossing-free circles.
struct PlanarDiagram {
    std::vector<Crossing> crossings;
    int free_loops = 0;

    bool operator==(const PlanarDiagram&) const = default;
};

namespace detail {

inline int over_in_slot(int sign) { return sign > 0 ? 1 : 3; }
inline int over_out_slot(int sign) { return sign > 0 ? 3 : 1; }

/// Strand continuation inside one crossing: under path 0 -> 2, over path
/// between the over-in and over-out slots.
inline int partner_out_slot(const Crossing& c, int in_slot) {
    if (in_slot == 0) return 2;
    if (in_slot == over_in_slot(c.sign)) return over_out_slot(c.sign);
    throw std::invalid_argument("slot is not an incoming slot");
}

inline int partner_in_slot(const Crossing& c, int out_slot) {
    if (out_slot == 2) return 0;
    if (out_slot == over_out_slot(c.sign)) return over_in_slot(c.sign);
    throw std::invalid_argument("slot is not an outgoing slot");
}

/// edge id -> (crossing index, slot) over incoming slots only.
inline std::map<int, std::pair<int, int>> in_slot_map(const PlanarDiagram& pd) {
    std::map<int, std::pair<int, int>> m;
    for (int ci = 0; ci < static_cast<int>(pd.crossings.size()); ++ci) {
        const auto& c = pd.crossings[ci];
        for (int slot : {0, over_in_slot(c.sign)})
            if (!m.emplace(c.edges[slot], std::make_pair(ci, slot)).second)
                throw std::invalid_argument("edge enters two crossings");
    }
    return m;
}

inline std::map<int, std::pair<int, int>> out_slot_map(const PlanarDiagram& pd) {
    std::map<int, std::pair<int, int>> m;
    for (int ci = 0; ci < static_cast<int>(pd.crossings.size()); ++ci) {
        const auto& c = pd.crossings[ci];
        for (int slot : {2, over_out_slot(c.sign)})
            if (!m.emplace(c.edges[slot], std::make_pair(ci, slot)).second)
                throw std::invalid_argument("edge leaves two crossings");
    }
    return m;
}

}  // namespace detail

/// Check structural consistency: signs are +-1, every edge id occurs exactly
/// twice, once entering and once leaving a crossing.
inline void validate_pd(const PlanarDiagram& pd) {
    if (pd.free_loops < 0) throw std::invalid_argument("negative free loop count");
    std::map<int, int> uses;
    for (const auto& c : pd.crossings) {
        if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("crossing sign must be +-1");
        for (int e : c.edges) ++uses[e];
    }
    for (auto [e, k] : uses)
        if (k != 2)
            throw std::invalid_argument("edge " + std::to_string(e) + " has " + std::to_string(k) +
                                        " ends, expected 2");
    auto ins = detail::in_slot_map(pd);
    auto outs = detail::out_slot_map(pd);
    if (ins.size() != uses.size() || outs.size() != uses.size())
        throw std::invalid_argument("inconsistent edge orientations");
}

inline int writhe(const PlanarDiagram& pd) {
    int w = 0;
    for (const auto& c : pd.crossings) w += c.sign;
    return w;
}

/// Number of link components, counting crossing-free circles.
inline int component_count(const PlanarDiagram& pd) {
    auto ins = detail::in_slot_map(pd);
    std::set<int> seen;
    int components = pd.free_loops;
    for (const auto& [start, _] : ins) {
        if (seen.count(start)) continue;
        ++components;
        int e = start;
        do {
            seen.insert(e);
            auto [ci, slot] = ins.at(e);
            const auto& c = pd.crossings[ci];
            e = c.edges[detail::partner_out_slot(c, slot)];
        } while (e != start);
    }
    return components;
}

/// Mirror image: swap over and under at every crossing.  The counterclockwise
/// slot order is preserved, so the record is re-anchored at the new under-in.
inline PlanarDiagram mirror_pd(const PlanarDiagram& pd) {
    PlanarDiagram out;
    out.free_loops = pd.free_loops;
    out.crossings.reserve(pd.crossings.size());
    for (const auto& c : pd.crossings) {
        if (c.sign > 0)
            out.crossings.push_back({{c.edges[1], c.edges[2], c.edges[3], c.edges[0]}, -1});
        else
            out.crossings.push_back({{c.edges[3], c.edges[0], c.edges[1], c.edges[2]}, +1});
    }
    return out;
}

/// Relabel edges 0,1,2,... in order of first appearance.
inline PlanarDiagram normalize_edges(const PlanarDiagram& pd) {
    PlanarDiagram out = pd;
    std::map<int, int> relabel;
    for (auto& c : out.crossings)
        for (int& e : c.edges) {
            auto it = relabel.find(e);
            if (it == relabel.end()) it = relabel.emplace(e, static_cast<int>(relabel.size())).first;
            e = it->second;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Braid closure
// ---------------------------------------------------------------------------

/// Diagram of the braid closure.  Strands run top to bottom; the letter
/// sigma_i crosses strand i over strand i+1, its inverse crosses under.
/// Strands untouched by any letter close into crossing-free circles.
inline PlanarDiagram braid_closure_pd(const BraidWord& w) {
    int next_id = 0;
    std::vector<int> top(w.strands), cur(w.strands);
    for (int i = 0; i < w.strands; ++i) top[i] = cur[i] = next_id++;

    std::vector<Crossing> recs;
    recs.reserve(w.letters.size());
    for (int l : w.letters) {
        int p = std::abs(l) - 1;
        int left = cur[p], right = cur[p + 1];
        int left_out = next_id++, right_out = next_id++;
        if (l > 0)
            recs.push_back({{right, left, left_out, right_out}, +1});
        else
            recs.push_back({{left, left_out, right_out, right}, -1});
        cur[p] = left_out;
        cur[p + 1] = right_out;
    }

    // Close up: identify each strand's bottom edge with its top edge.
    std::vector<int> parent(next_id);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < w.strands; ++i) {
        int a = find(cur[i]), b = find(top[i]);
        if (a != b) parent[a] = b;
    }

    PlanarDiagram pd;
    std::set<int> used;
    for (auto& r : recs) {
        Crossing c = r;
        for (int& e : c.edges) {
            e = find(e);
            used.insert(e);
        }
        pd.crossings.push_back(c);
    }
    for (int i = 0; i < w.strands; ++i)
        if (!used.count(find(top[i]))) ++pd.free_loops;
    return normalize_edges(pd);
}

// ---------------------------------------------------------------------------
// Reidemeister simplification
// ---------------------------------------------------------------------------

namespace detail {

/// Remove the crossings flagged dead, merge edges along the given unions, and
/// credit a free loop for every merged strand class that no longer meets a
/// crossing.
inline PlanarDiagram rebuild_after_move(const PlanarDiagram& pd, const std::vector<bool>& dead,
                                        std::vector<std::pair<int, int>> unions,
                                        const std::vector<int>& loop_candidates) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        int root = find(it->second);
        parent[x] = root;
        return root;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    };
    for (auto [a, b] : unions) unite(a, b);

    PlanarDiagram out;
    out.free_loops = pd.free_loops;
    std::set<int> used;
    for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
        if (dead[i]) continue;
        Crossing c = pd.crossings[i];
        for (int& e : c.edges) {
            e = find(e);
            used.insert(e);
        }
        out.crossings.push_back(c);
    }
    std::set<int> loop_classes;
    for (int e : loop_candidates) loop_classes.insert(find(e));
    for (int cls : loop_classes)
        if (!used.count(cls)) ++out.free_loops;
    return out;
}

/// Try one kink removal.  Returns true and updates pd on success.
inline bool try_reidemeister_1(PlanarDiagram& pd) {
    for (std::size_t ci = 0; ci < pd.crossings.size(); ++ci) {
        const auto& c = pd.crossings[ci];
        for (int i = 0; i < 4; ++i) {
            if (c.edges[i] != c.edges[(i + 1) % 4]) continue;
            int a = c.edges[(i + 2) % 4], b = c.edges[(i + 3) % 4];
            std::vector<bool> dead(pd.crossings.size(), false);
            dead[ci] = true;
            pd = rebuild_after_move(pd, dead, {{a, b}}, {a});
            return true;
        }
    }
    return false;
}

/// Try one bigon removal: two crossings of opposite sign joined by a pair of
/// edges occupying adjacent slots at both ends.
inline bool try_reidemeister_2(PlanarDiagram& pd) {
    const int n = static_cast<int>(pd.crossings.size());
    for (int ci = 0; ci < n; ++ci) {
        const auto& c = pd.crossings[ci];
        // Skip crossings with a kink loop; those belong to try_reidemeister_1.
        bool has_loop = false;
        for (int i = 0; i < 4; ++i)
            if (c.edges[i] == c.edges[(i + 1) % 4] || c.edges[i] == c.edges[(i + 2) % 4])
                has_loop = true;
        if (has_loop) continue;
        for (int di = ci + 1; di < n; ++di) {
            const auto& d = pd.crossings[di];
            if (d.sign == c.sign) continue;
            for (int i = 0; i < 4; ++i) {
                int e = c.edges[i], f = c.edges[(i + 1) % 4];
                // Both shared edges must reappear exactly once each in d, at
                // adjacent slots.
                int je = -1, jf = -1;
                for (int j = 0; j < 4; ++j) {
                    if (d.edges[j] == e) je = j;
                    if (d.edges[j] == f) jf = j;
                }
                if (je < 0 || jf < 0) continue;
                if (jf != (je + 1) % 4 && je != (jf + 1) % 4) continue;
                // The strand through e continues at the opposite slot pair.
                int a = c.edges[(i + 2) % 4];        // partner of e at c
                int b = c.edges[(i + 3) % 4];        // partner of f at c
                int a2 = d.edges[(je + 2) % 4];      // partner of e at d
                int b2 = d.edges[(jf + 2) % 4];      // partner of f at d
                if (a2 == e || a2 == f || b2 == e || b2 == f) continue;
                std::vector<bool> dead(pd.crossings.size(), false);
                dead[ci] = dead[di] = true;
                pd = rebuild_after_move(pd, dead, {{a, e}, {e, a2}, {b, f}, {f, b2}}, {a, b});
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Apply crossing-reducing Reidemeister I and II moves until none applies.
/// Every move preserves the link type, so invariants of the result equal
/// invariants of the input.
inline PlanarDiagram simplify(PlanarDiagram pd) {
    for (;;) {
        if (detail::try_reidemeister_1(pd)) continue;
        if (detail::try_reidemeister_2(pd)) continue;
        break;
    }
    return normalize_edges(pd);
}

// ---------------------------------------------------------------------------
// Dowker-Thistlethwaite realization
// ---------------------------------------------------------------------------

namespace detail {

/// Fixed data shared by every candidate embedding of one DT code.
struct DTChords {
    int n = 0;
    std::vector<int> pass_crossing;  // pass time t (1..2n) -> crossing index
    std::vector<int> odd_time;       // crossing -> its odd pass time
    std::vector<int> even_time;      // crossing -> its even pass time
    std::vector<bool> odd_under;     // crossing -> odd pass is the under pass

    explicit DTChords(const DTCode& code) {
        n = code.crossing_count();
        pass_crossing.assign(2 * n + 1, -1);
        odd_time.assign(n, 0);
        even_time.assign(n, 0);
        odd_under.assign(n, false);
        for (int j = 0; j < n; ++j) {
            odd_time[j] = 2 * j + 1;
            even_time[j] = std::abs(code.entries[j]);
            pass_crossing[odd_time[j]] = j;
            pass_crossing[even_time[j]] = j;
            // A negative entry marks the even pass as the over pass.
            odd_under[j] = code.entries[j] < 0;
        }
    }

    // Incidence darts at crossing j: 4j+0 odd-in, 4j+1 odd-out, 4j+2 even-in,
    // 4j+3 even-out.
    int in_dart(int t) const { return 4 * pass_crossing[t] + (t % 2 == 1 ? 0 : 2); }
    int out_dart(int t) const { return 4 * pass_crossing[t] + (t % 2 == 1 ? 1 : 3); }
};

/// Counterclockwise successor of a dart under one of the two local rotations.
/// Rotation 0 orders darts (odd-in, even-in, odd-out, even-out); rotation 1
/// orders them (odd-in, even-out, odd-out, even-in).
inline int rotation_next(int dart, bool flipped) {
    static constexpr int kNext0[4] = {2, 3, 1, 0};  // 0->2->1->3->0
    static constexpr int kNext1[4] = {3, 2, 0, 1};  // 0->3->1->2->0
    int base = dart & ~3;
    int k = dart & 3;
    return base + (flipped ? kNext1[k] : kNext0[k]);
}

}  // namespace detail

/// All planar diagrams realizing the code arise from assigning one of two
/// local rotations to each crossing and keeping the sphere embeddings (Euler
/// count: faces == crossings + 2).  Returns the canonical realization:
/// maximum writhe, then lexicographically smallest sign vector, then smallest
/// edge table.  Throws NonRealizable when no embedding exists.
inline PlanarDiagram realize_dt(const DTCode& code) {
    const detail::DTChords chords(code);
    const int n = chords.n;
    const int darts = 4 * n;

    // Arc involution: arc t-1 (1-based pass t) pairs out_dart(t) with
    // in_dart(t+1).
    std::vector<int> opposite(darts, -1);
    for (int t = 1; t <= 2 * n; ++t) {
        int u = chords.out_dart(t);
        int v = chords.in_dart(t == 2 * n ? 1 : t + 1);
        opposite[u] = v;
        opposite[v] = u;
    }

    bool found = false;
    PlanarDiagram best;
    int best_writhe = 0;
    std::vector<int> best_signs;

    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        auto flipped = [&](int crossing) { return (mask >> crossing) & 1u; };
        // Count faces: orbits of rotation_next composed with the involution.
        std::vector<bool> seen(darts, false);
        int faces = 0;
        for (int d0 = 0; d0 < darts; ++d0) {
            if (seen[d0]) continue;
            ++faces;
            int d = d0;
            do {
                seen[d] = true;
                int o = opposite[d];
                d = detail::rotation_next(o, flipped(o / 4));
            } while (d != d0);
        }
        if (faces != n + 2) continue;

        PlanarDiagram pd;
        std::vector<int> signs;
        auto dart_arc = [&](int dart) {
            int j = dart / 4, k = dart % 4;
            int t = (k < 2) ? chords.odd_time[j] : chords.even_time[j];
            bool incoming = (k % 2 == 0);
            return incoming ? (t + 2 * n - 2) % (2 * n) : t - 1;
        };
        for (int j = 0; j < n; ++j) {
            int under_in = 4 * j + (chords.odd_under[j] ? 0 : 2);
            int over_in = 4 * j + (chords.odd_under[j] ? 2 : 0);
            Crossing c;
            int d = under_in;
            for (int k = 0; k < 4; ++k) {
                c.edges[k] = dart_arc(d);
                if (k == 1) c.sign = (d == over_in) ? +1 : -1;
                d = detail::rotation_next(d, flipped(j));
            }
            pd.crossings.push_back(c);
            signs.push_back(c.sign);
        }

        int w = writhe(pd);
        auto better = [&] {
            if (!found) return true;
            if (w != best_writhe) return w > best_writhe;
            if (signs != best_signs) return signs < best_signs;
            for (std::size_t i = 0; i < pd.crossings.size(); ++i)
                if (pd.crossings[i].edges != best.crossings[i].edges)
                    return pd.crossings[i].edges < best.crossings[i].edges;
            return false;
        };
        if (better()) {
            found = true;
            best = pd;
            best_writhe = w;
            best_signs = signs;
        }
    }
    if (!found)
        throw Error(ErrorKind::NonRealizable, "DT code " + serialize_dt(code) + " has no planar realization");
    return best;
}

/// Whether the code admits any planar realization.  Signs do not affect
/// realizability, only the embedding count does.
inline bool is_realizable_dt(const DTCode& code) {
    try {
        realize_dt(code);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonRealizable) return false;
        throw;
    }
}

/// Every DT code readable off the diagram: one per starting edge and
/// traversal direction.  The diagram must be a knot (one component, no free
/// loops).
inline std::set<std::vector<int>> extract_dt_codes(const PlanarDiagram& pd) {
    const int n = static_cast<int>(pd.crossings.size());
    if (n == 0 || pd.free_loops != 0 || component_count(pd) != 1)
        throw std::invalid_argument("DT extraction needs a one-component diagram with a crossing");

    auto ins = detail::in_slot_map(pd);
    auto outs = detail::out_slot_map(pd);

    std::set<std::vector<int>> codes;
    for (const auto& entry : ins) {
        const int start = entry.first;
        for (int dir = 0; dir < 2; ++dir) {
            // walk the knot, recording (time, over?) per crossing
            std::vector<std::vector<std::pair<int, bool>>> visits(n);
            int e = start;
            for (int t = 1; t <= 2 * n; ++t) {
                auto [ci, slot] = dir == 0 ? ins.at(e) : outs.at(e);
                const auto& c = pd.crossings[ci];
                bool over = dir == 0 ? (slot == detail::over_in_slot(c.sign))
                                     : (slot == detail::over_out_slot(c.sign));
                visits[ci].emplace_back(t, over);
                int next_slot = dir == 0 ? detail::partner_out_slot(c, slot)
                                         : detail::partner_in_slot(c, slot);
                e = c.edges[next_slot];
            }
            std::vector<int> entries(n, 0);
            for (const auto& v : visits) {
                auto [t1, over1] = v.at(0);
                auto [t2, over2] = v.at(1);
                if (t1 % 2 == 0) {
                    std::swap(t1, t2);
                    std::swap(over1, over2);
                }
                // t1 odd, t2 even; negative entry when the even pass is over
                entries[(t1 - 1) / 2] = over2 ? -t2 : t2;
            }
            codes.insert(entries);
        }
    }
    return codes;
}

/// Canonical extracted code: lexicographically smallest over all starts and
/// directions.
inline DTCode extract_dt(const PlanarDiagram& pd) {
    auto codes = extract_dt_codes(pd);
    return make_dt_code(*codes.begin());
}

}  // namespace kcensus
