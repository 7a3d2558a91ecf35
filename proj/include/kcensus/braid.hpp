#pragma once

#include <cstdlib>
#include <numeric>
#include <vector>

#include "kcensus/notation.hpp"

namespace kcensus {

/// Letters of delta_r = sigma_1 sigma_2 ... sigma_{r-1}, the positive
/// half-twist core used by twisted torus braids.
inline std::vector<int> delta_letters(int r) {
    if (r < 2) throw Error(ErrorKind::BadStrandCount, "delta_r needs r >= 2");
    std::vector<int> letters(r - 1);
    std::iota(letters.begin(), letters.end(), 1);
    return letters;
}

/// Braid word of T(r1,s1,...,rk,sk): the concatenation of (delta_{r_i})^{s_i}
/// on r1 strands.  Negative s_i contributes |s_i| copies of the inverse.
inline BraidWord build_ttk(const TTKSpec& spec) {
    const int strands = spec.pairs.front().first;
    std::vector<int> word;
    for (auto [r, s] : spec.pairs) {
        auto block = delta_letters(r);
        if (s > 0) {
            for (int rep = 0; rep < s; ++rep) word.insert(word.end(), block.begin(), block.end());
        } else {
            for (int rep = 0; rep < -s; ++rep)
                for (auto it = block.rbegin(); it != block.rend(); ++it) word.push_back(-*it);
        }
    }
    return make_braid_word(strands, std::move(word));
}

/// Sum of letter signs; equals the writhe of the closure diagram.
inline int exponent_sum(const BraidWord& w) {
    int sum = 0;
    for (int l : w.letters) sum += (l > 0) ? 1 : -1;
    return sum;
}

/// Underlying permutation of the braid: perm[i] is the bottom position of
/// the strand entering at top position i (0-based).
inline std::vector<int> braid_permutation(const BraidWord& w) {
    std::vector<int> position(w.strands);
    std::iota(position.begin(), position.end(), 0);
    // position[i] = current position of the strand that started at i
    for (int l : w.letters) {
        int p = std::abs(l) - 1;
        for (int& pos : position) {
            if (pos == p)
                ++pos;
            else if (pos == p + 1)
                --pos;
        }
    }
    return position;
}

/// Number of link components of the braid closure: cycles of the underlying
/// permutation.
inline int closure_component_count(const BraidWord& w) {
    auto perm = braid_permutation(w);
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
    }
    return cycles;
}

/// A T-notation spec presents a Lorenz link exactly when every twist count
/// s_i is positive (the r parameters already decrease strictly).
inline bool is_lorenz_form(const TTKSpec& spec) {
    for (auto [r, s] : spec.pairs)
        if (s < 0) return false;
    return true;
}

/// Mirror image: negate every twist count.
inline TTKSpec mirror(const TTKSpec& spec) {
    auto pairs = spec.pairs;
    for (auto& [r, s] : pairs) s = -s;
    return make_ttk_spec(std::move(pairs));
}

/// Mirror image: invert every crossing.
inline BraidWord mirror(const BraidWord& w) {
    auto letters = w.letters;
    for (int& l : letters) l = -l;
    return BraidWord{w.strands, std::move(letters)};
}

}  // namespace kcensus
