#ifndef QEXCH_HAAGERUP_HPP
#define QEXCH_HAAGERUP_HPP

#include <limits>
#include <utility>
#include <vector>

#include "qexch/perm.hpp"

namespace qexch {

// Reduced free-group word: syllables (generator, nonzero exponent) with
// distinct adjacent generators. Empty = group unit.
struct FreeWord {
    std::vector<std::pair<int, int>> syllables;
    bool operator==(const FreeWord&) const = default;
    bool operator<(const FreeWord& o) const { return syllables < o.syllables; }
    bool empty() const { return syllables.empty(); }
};

// phi_lambda(w) = exp(-lambda |w|); lambda = +inf encodes the tracial state.
struct HaagerupState {
    double lambda = 1.0;
    bool tracial() const { return std::isinf(lambda); }
};

FreeWord reduce_word(const std::vector<std::pair<int, int>>& raw);
int word_length(const FreeWord& w);
FreeWord word_concat(const FreeWord& v, const FreeWord& w); // reduced product
FreeWord word_inverse(const FreeWord& w);
FreeWord group_permute(const Permutation& g, const FreeWord& w);
std::vector<int> word_support(const FreeWord& w); // distinct generator indices

double haagerup_eval(const HaagerupState& st, const FreeWord& w);

// Exact Cesaro table row at each n in [n_min, n_max]: mean over P_{1..n} of
// phi(v * g.w) against phi(v) phi(w), with the counting bound
// 2 * (1 - disjoint_fraction) for unit-norm group words.
std::vector<CesaroReport> cesaro_cluster(const HaagerupState& st, const FreeWord& v,
                                         const FreeWord& w, int n_min, int n_max);

// Min eigenvalue of the kernel K(v,w) = phi(v^{-1} w) over the word set.
double gram_psd_check(const HaagerupState& st, const std::vector<FreeWord>& words);

// All reduced words of length <= radius over generators {1..gens}.
std::vector<FreeWord> word_ball(int gens, int radius);

} // namespace qexch

#endif
