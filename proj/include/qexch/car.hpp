#ifndef QEXCH_CAR_HPP
#define QEXCH_CAR_HPP

#include <vector>

#include "qexch/cmat.hpp"
#include "qexch/perm.hpp"

namespace qexch {

// CAR(n) realized in M_{2^n} by Jordan-Wigner:
// a_j = Z^{(j-1)} x sigma^- x I^{(n-j)}.
struct CarSystem {
    int n = 0;
    std::vector<CMat> a;     // annihilators, size n
    CMat parity_unitary;     // Z^{x n}, conjugation sends a_j -> -a_j
};

struct SiteState {
    CMat rho; // 2x2 density matrix
};

struct CarState {
    CMat density; // 2^n x 2^n
};

inline constexpr int kCarMaxModes = 8;
inline constexpr int kCarMaxPermModes = 6; // n! unitary guard

CarSystem jw_generators(int n);

// Is rho (2x2) even, i.e. commuting with diag(1,-1)?
bool is_even_site_state(const SiteState& s, double tol = 1e-12);

// Unitary U with U a_j U^dag = a_{g(j)}, defined up to global phase.
// Transpositions are solved directly from the intertwiner equations; a general
// g is composed from adjacent transpositions (phases cancel in conjugations).
CMat permutation_unitary(const CarSystem& sys, const Permutation& g);

CarState product_state(const SiteState& site, int n);

// phi(X) = trace(density X).
cplx car_expect(const CarState& st, const CMat& X);

// density -> U_g^dag density U_g, so trace pairings compose as phi o alpha_g.
CarState state_permute(const CarState& st, const CarSystem& sys, const Permutation& g);

// Average of state_permute over all of P_{1..n}.
CarState symmetrize(const CarState& st, const CarSystem& sys);

// E(X) = (1/n!) sum_g U_g X U_g^dag; conditional expectation onto the
// fixed-point algebra of the permutation action.
CMat fixed_point_expectation(const CarSystem& sys, const CMat& X);

// Worst CAR anticommutator residual over all generator pairs.
double car_relations_residual(const CarSystem& sys);

} // namespace qexch

#endif
