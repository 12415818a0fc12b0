#ifndef QEXCH_PERM_HPP
#define QEXCH_PERM_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "qexch/errors.hpp"

namespace qexch {

// Finitely supported bijection of site indices. Indices absent from the map
// are fixed points.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::map<int, int> mapping);

    static Permutation identity() { return Permutation(); }
    static Permutation transposition(int i, int j);
    // images[k] is the image of points[k].
    static Permutation from_images(const std::vector<int>& points,
                                   const std::vector<int>& images);

    int operator()(int i) const;
    Permutation inverse() const;
    // (*this) after other: (a*b)(x) = a(b(x)).
    Permutation compose(const Permutation& other) const;

    const std::map<int, int>& mapping() const { return map_; }
    std::vector<int> support() const;
    bool is_identity() const { return map_.empty(); }

    bool operator==(const Permutation& o) const { return map_ == o.map_; }

private:
    std::map<int, int> map_; // fixed points pruned
};

inline constexpr int kPermEnumLimit = 10; // 10! ~ 3.6M

// All |I|! permutations of the index set I, lexicographic by image tuple.
std::vector<Permutation> enumerate_perms(const std::vector<int>& I);

// Exact arithmetic mean of f over enumerate_perms(I). The permutation stream
// is sharded across threads; the final reduction sums fixed-index chunks in
// order, so results do not depend on scheduling.
std::complex<double> cesaro_mean(const std::function<std::complex<double>(const Permutation&)>& f,
                                 const std::vector<int>& I);

// Exact nonnegative rational with 64-bit parts, reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

Rational make_rational(std::int64_t num, std::int64_t den);

// Fraction of g in P_I moving a fixed t-subset entirely off a fixed s-subset:
// |{g : g(T) disjoint from S}| / |I|!  with S, T disjoint reference placements.
// feasible is cleared when s + t > |I| (the fraction is then reported as 0).
Rational disjoint_fraction(int n, int s, int t, bool* feasible = nullptr);

// One row of a finite-I Cesaro table.
struct CesaroReport {
    int n = 0;
    std::complex<double> mean;
    std::complex<double> target;
    double gap = 0.0;   // |mean - target|
    double bound = 0.0; // permutation-counting bound at this n
};

// Scalar condition check: lhs, rhs and their absolute gap.
struct ConditionReport {
    std::complex<double> lhs;
    std::complex<double> rhs;
    double gap = 0.0;
};

// phi(xy) vs phi(x)phi(y); supports must be declared disjoint by the caller.
template <class Elem, class Eval, class Mul>
ConditionReport check_product_state(const Eval& phi, const Mul& mul, const Elem& x,
                                    const Elem& y) {
    ConditionReport r;
    r.lhs = phi(mul(x, y));
    r.rhs = phi(x) * phi(y);
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

// phi(a1 a2 a3) vs phi(a1 a3) phi(a2); middle support disjoint from the outer
// ones.
template <class Elem, class Eval, class Mul>
ConditionReport check_block_singleton(const Eval& phi, const Mul& mul, const Elem& a1,
                                      const Elem& a2, const Elem& a3) {
    ConditionReport r;
    r.lhs = phi(mul(mul(a1, a2), a3));
    r.rhs = phi(mul(a1, a3)) * phi(a2);
    r.gap = std::abs(r.lhs - r.rhs);
    return r;
}

// Finite-I weak-clustering table: mean over g in P_I of phi(x * g.w) against
// phi(x)phi(w), with the counting bound 2*norm_x*norm_w*(1 - disjoint_fraction).
template <class Elem, class Eval, class Mul, class Act>
std::vector<CesaroReport> check_weak_clustering(const Eval& phi, const Mul& mul,
                                                const Act& act, const Elem& x,
                                                const Elem& w, int support_x,
                                                int support_w, int n_min, int n_max,
                                                double norm_x = 1.0, double norm_w = 1.0) {
    std::vector<CesaroReport> rows;
    const std::complex<double> target = phi(x) * phi(w);
    for (int n = n_min; n <= n_max; ++n) {
        std::vector<int> I(n);
        for (int i = 0; i < n; ++i) I[i] = i + 1;
        CesaroReport row;
        row.n = n;
        row.mean = cesaro_mean(
            [&](const Permutation& g) { return phi(mul(x, act(g, w))); }, I);
        row.target = target;
        row.gap = std::abs(row.mean - target);
        row.bound = 2.0 * norm_x * norm_w *
                    (1.0 - disjoint_fraction(n, support_x, support_w).value());
        rows.push_back(row);
    }
    return rows;
}

} // namespace qexch

#endif
