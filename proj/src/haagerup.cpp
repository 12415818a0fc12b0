#include "qexch/haagerup.hpp"

#include "qexch/cmat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qexch {

FreeWord reduce_word(const std::vector<std::pair<int, int>>& raw) {
    // stack with merge-on-push; a merge that cancels to zero pops the top and
    // lets the next syllable see the newly exposed generator, so cascades
    // reduce in one pass
    FreeWord w;
    for (const auto& [gen, exp] : raw) {
        if (gen < 1) throw rejected_input("reduce_word: generator index must be positive");
        if (exp == 0) continue;
        if (!w.syllables.empty() && w.syllables.back().first == gen) {
            w.syllables.back().second += exp;
            if (w.syllables.back().second == 0) w.syllables.pop_back();
        } else {
            w.syllables.emplace_back(gen, exp);
        }
    }
    return w;
}

int word_length(const FreeWord& w) {
    int len = 0;
    for (const auto& [gen, exp] : w.syllables) len += std::abs(exp);
    return len;
}

FreeWord word_concat(const FreeWord& v, const FreeWord& w) {
    std::vector<std::pair<int, int>> raw = v.syllables;
    raw.insert(raw.end(), w.syllables.begin(), w.syllables.end());
    return reduce_word(raw);
}

FreeWord word_inverse(const FreeWord& w) {
    FreeWord inv;
    for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
        inv.syllables.emplace_back(it->first, -it->second);
    return inv;
}

FreeWord group_permute(const Permutation& g, const FreeWord& w) {
    FreeWord out = w;
    for (auto& [gen, exp] : out.syllables) gen = g(gen);
    return out;
}

std::vector<int> word_support(const FreeWord& w) {
    std::set<int> s;
    for (const auto& [gen, exp] : w.syllables) s.insert(gen);
    return {s.begin(), s.end()};
}

double haagerup_eval(const HaagerupState& st, const FreeWord& w) {
    if (st.tracial()) return w.empty() ? 1.0 : 0.0;
    if (!(st.lambda > 0.0)) throw rejected_input("haagerup_eval: lambda must be positive");
    return std::exp(-st.lambda * word_length(w));
}

std::vector<CesaroReport> cesaro_cluster(const HaagerupState& st, const FreeWord& v,
                                         const FreeWord& w, int n_min, int n_max) {
    if (n_max > 9) throw resource_limit("cesaro_cluster: n above factorial guard");
    const int sv = static_cast<int>(word_support(v).size());
    const int sw = static_cast<int>(word_support(w).size());
    for (int gen : word_support(v))
        if (gen < 1 || gen > n_min)
            throw rejected_input("cesaro_cluster: generator outside {1..n}");
    for (int gen : word_support(w))
        if (gen < 1 || gen > n_min)
            throw rejected_input("cesaro_cluster: generator outside {1..n}");
    const double target = haagerup_eval(st, v) * haagerup_eval(st, w);
    std::vector<CesaroReport> rows;
    for (int n = n_min; n <= n_max; ++n) {
        std::vector<int> I(n);
        for (int i = 0; i < n; ++i) I[i] = i + 1;
        CesaroReport row;
        row.n = n;
        row.mean = cesaro_mean(
            [&](const Permutation& g) {
                return cplx(haagerup_eval(st, word_concat(v, group_permute(g, w))), 0.0);
            },
            I);
        row.target = target;
        row.gap = std::abs(row.mean - row.target);
        row.bound = 2.0 * (1.0 - disjoint_fraction(n, sv, sw).value());
        rows.push_back(row);
    }
    return rows;
}

double gram_psd_check(const HaagerupState& st, const std::vector<FreeWord>& words) {
    if (words.size() > 200) throw resource_limit("gram_psd_check: word set too large");
    const int m = static_cast<int>(words.size());
    CMat K(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            K(i, j) = haagerup_eval(st, word_concat(word_inverse(words[i]), words[j]));
    return hermitian_min_eig(K);
}

std::vector<FreeWord> word_ball(int gens, int radius) {
    std::vector<FreeWord> ball{FreeWord{}};
    std::set<std::vector<std::pair<int, int>>> seen{{}};
    std::vector<FreeWord> frontier = ball;
    for (int step = 0; step < radius; ++step) {
        std::vector<FreeWord> next;
        for (const auto& w : frontier)
            for (int g = 1; g <= gens; ++g)
                for (int e : {1, -1}) {
                    FreeWord cand = word_concat(w, FreeWord{{{g, e}}});
                    if (word_length(cand) != word_length(w) + 1) continue;
                    if (seen.insert(cand.syllables).second) {
                        next.push_back(cand);
                        ball.push_back(cand);
                    }
                }
        frontier = std::move(next);
    }
    return ball;
}

} // namespace qexch
