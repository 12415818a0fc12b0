#ifndef QEXCH_QFOCK_HPP
#define QEXCH_QFOCK_HPP

#include <vector>

#include "qexch/cmat.hpp"
#include "qexch/perm.hpp"

namespace qexch {

// All monomials e_{i1} x ... x e_{in} with 0 <= n <= N and i_k in {1..d},
// enumerated lexicographically by (degree, tuple). Index 0 is the vacuum.
class MonomialBasis {
public:
    MonomialBasis(int d, int N);

    int d() const { return d_; }
    int degree_cap() const { return N_; }
    int size() const { return static_cast<int>(tuples_.size()); }
    const std::vector<int>& tuple(int idx) const { return tuples_[idx]; }
    int index_of(const std::vector<int>& tuple) const;
    int degree_offset(int n) const { return offsets_[n]; } // first index of degree n
    int degree_size(int n) const;

private:
    int d_, N_;
    std::vector<std::vector<int>> tuples_;
    std::vector<int> offsets_;
};

// Inversion count of a permutation of {1..n} given as its image tuple.
int inversions(const std::vector<int>& images);

// q-deformed inner product of two monomials over {1..d}; zero across degrees.
// Computed by direct enumeration over the symmetric group (degrees <= 8).
cplx q_inner(const std::vector<int>& u, const std::vector<int>& v, double q);

// Truncated q-Fock space with its Gram matrix in monomial coordinates.
class QSpace {
public:
    QSpace(int d, int N, double q);

    const MonomialBasis& basis() const { return basis_; }
    double q() const { return q_; }
    const CMat& gram() const { return gram_; }
    CMat gram_block(int degree) const;

    // <x, y>_q for coordinate vectors in the monomial basis.
    cplx metric_dot(const std::vector<cplx>& x, const std::vector<cplx>& y) const;

private:
    MonomialBasis basis_;
    double q_;
    CMat gram_;
};

struct LadderOps {
    CMat creator;
    CMat annihilator;
    CMat field; // creator + annihilator
};

// Matrices of a_q^dag(f), a_q(f) and s_q(f) in monomial coordinates; the
// creator drops images above the truncation degree.
LadderOps ladder_ops(const QSpace& space, const std::vector<cplx>& f);

// <(product of word) Omega, Omega>_q; empty word gives 1.
cplx vacuum_moment(const QSpace& space, const std::vector<CMat>& word);

// Serial reference for the Gram assembly (the QSpace constructor parallelizes
// over entries).
CMat gram_reference(const MonomialBasis& basis, double q);

// Frobenius norm of a_q(f) a_q^dag(g) - q a_q^dag(g) a_q(f) - <g,f> 1,
// restricted to degrees <= N-1 where truncation cannot corrupt it.
double commutation_residual(const QSpace& space, const std::vector<cplx>& f,
                            const std::vector<cplx>& g);

// Worst |<adag u, v>_q - <u, a v>_q| over basis monomials of degree <= N-1.
double adjointness_residual(const QSpace& space, const std::vector<cplx>& f);

} // namespace qexch

#endif
