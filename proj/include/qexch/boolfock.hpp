#ifndef QEXCH_BOOLFOCK_HPP
#define QEXCH_BOOLFOCK_HPP

#include <map>
#include <utility>
#include <vector>

#include "qexch/cmat.hpp"
#include "qexch/perm.hpp"

namespace qexch {

// Boolean Fock space C + C^d with basis (e_#, e_1, ..., e_d); the vacuum is
// coordinate 0.
struct BooleanSpace {
    int d = 0;
    int dim() const { return d + 1; }
};

struct BooleanOps {
    std::vector<CMat> b;    // annihilators, site 1..d
    std::vector<CMat> bdag; // creators
    std::vector<CMat> r;    // b + bdag
};

BooleanOps boolean_ops(const BooleanSpace& space);

// Matrix-unit index: 0 is the vacuum slot #, 1..d are sites.
using UnitKey = std::pair<int, int>;

// Full system of (d+1)^2 matrix units built only from products of b / bdag:
// e_{#j} = b_j, e_{j#} = bdag_j, e_{##} = b_i bdag_i, e_{ij} = bdag_i b_j.
std::map<UnitKey, CMat> matrix_units(const BooleanSpace& space, const BooleanOps& ops);

// gamma * vacuum expectation + (1-gamma) * normalized site-sector trace; the
// second term is the finite-d stand-in for the state killing compacts.
cplx invariant_family_eval(const BooleanSpace& space, double gamma, const CMat& observable);

// Dimension of the space of observables fixed by every site permutation
// (vacuum index held fixed); the invariant-state set has the same dimension.
int invariant_observable_dimension(const BooleanSpace& space);

struct ObstructionReport {
    double ratio;      // omega_xi(F_phi(A)) / omega_xi(A)
    double overlap_sq; // |<e_#, xi>|^2
};

// The conditional-expectation obstruction: for A = |e_#><xi| and
// F_phi(A) = omega_#(A) P_# + phi(P AP) P with P = P_#^perp, the ratio of
// expectations in omega_xi equals |<e_#,xi>|^2 regardless of phi. phi_site is
// a density matrix on the d-dimensional site block.
ObstructionReport ce_obstruction(const BooleanSpace& space, const std::vector<cplx>& xi,
                                 const CMat& phi_site);

// Conjugation by the permutation of site indices (vacuum fixed).
CMat boolean_permute(const BooleanSpace& space, const Permutation& g, const CMat& obs);

} // namespace qexch

#endif
