#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qexch/car.hpp"
#include "qexch/rng.hpp"

#include <cmath>
#include <vector>

using namespace qexch;

namespace {

CMat anticomm(const CMat& x, const CMat& y) { return mul(x, y) + mul(y, x); }

SiteState even_state(double p) {
    SiteState s;
    s.rho = CMat(2, 2);
    s.rho(0, 0) = p;
    s.rho(1, 1) = 1.0 - p;
    return s;
}

SiteState tilted_state() { // not even: off-diagonal coherence
    SiteState s;
    s.rho = CMat(2, 2);
    s.rho(0, 0) = 0.5;
    s.rho(0, 1) = 0.3;
    s.rho(1, 0) = 0.3;
    s.rho(1, 1) = 0.5;
    return s;
}

// brute-force invariance gap of a state under all transpositions
double invariance_gap(const CarState& st, const CarSystem& sys) {
    double gap = 0.0;
    for (int i = 1; i <= sys.n; ++i)
        for (int j = i + 1; j <= sys.n; ++j) {
            const CarState moved = state_permute(st, sys, Permutation::transposition(i, j));
            gap = std::max(gap, max_abs_diff(moved.density, st.density));
        }
    return gap;
}

} // namespace

TEST_CASE("Jordan-Wigner generators satisfy the CAR exactly") {
    for (int n = 1; n <= 6; ++n) {
        const CarSystem sys = jw_generators(n);
        CAPTURE(n);
        CHECK(car_relations_residual(sys) < 1e-12);
        // spot-check the defining relations directly at n = 3
        if (n == 3) {
            const int D = 8;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    CHECK(frob_norm(anticomm(sys.a[i], sys.a[j])) < 1e-14);
                    CMat lhs = anticomm(sys.a[i], adjoint(sys.a[j]));
                    if (i == j) lhs -= CMat::identity(D);
                    CHECK(frob_norm(lhs) < 1e-14);
                }
        }
    }
    CHECK_THROWS_AS(jw_generators(0), resource_limit);
    CHECK_THROWS_AS(jw_generators(kCarMaxModes + 1), resource_limit);
}

TEST_CASE("parity unitary flips every annihilator") {
    for (int n = 1; n <= 5; ++n) {
        const CarSystem sys = jw_generators(n);
        const CMat& P = sys.parity_unitary;
        CHECK(max_abs_diff(mul(P, adjoint(P)), CMat::identity(1 << n)) < 1e-14);
        for (int j = 0; j < n; ++j) {
            const CMat conj_aj = mul(mul(P, sys.a[j]), adjoint(P));
            CHECK(max_abs_diff(conj_aj, cplx(-1.0) * sys.a[j]) < 1e-14);
        }
    }
}

TEST_CASE("is_even_site_state") {
    CHECK(is_even_site_state(even_state(0.3)));
    CHECK_FALSE(is_even_site_state(tilted_state()));
}

TEST_CASE("permutation unitaries intertwine the generators") {
    for (int n : {3, 4}) {
        const CarSystem sys = jw_generators(n);
        std::vector<Permutation> gs{Permutation::transposition(1, n),
                                    Permutation::transposition(2, 3)};
        if (n == 3) gs.push_back(Permutation::from_images({1, 2, 3}, {2, 3, 1}));
        if (n == 4) gs.push_back(Permutation::from_images({1, 2, 3, 4}, {4, 3, 1, 2}));
        for (const auto& g : gs) {
            const CMat U = permutation_unitary(sys, g);
            CHECK(max_abs_diff(mul(U, adjoint(U)), CMat::identity(1 << n)) < 1e-10);
            for (int j = 1; j <= n; ++j) {
                CAPTURE(n);
                CAPTURE(j);
                const CMat lhs = mul(mul(U, sys.a[j - 1]), adjoint(U));
                CHECK(max_abs_diff(lhs, sys.a[g(j) - 1]) < 1e-9);
            }
        }
    }
    const CarSystem sys = jw_generators(3);
    CHECK(max_abs_diff(permutation_unitary(sys, Permutation::identity()),
                       CMat::identity(8)) < 1e-12);
    CHECK_THROWS_AS(permutation_unitary(sys, Permutation::transposition(1, 7)),
                    rejected_input);
}

TEST_CASE("conjugations compose correctly through the phase ambiguity") {
    const CarSystem sys = jw_generators(4);
    const Permutation g = Permutation::from_images({1, 2, 3, 4}, {2, 4, 1, 3});
    const Permutation h = Permutation::transposition(1, 3);
    const CMat Ug = permutation_unitary(sys, g);
    const CMat Uh = permutation_unitary(sys, h);
    const CMat Ugh = permutation_unitary(sys, g.compose(h));
    CounterRng rng(31);
    const CMat X = rng.matrix(16, 16);
    const CMat via_pair = mul(mul(Ug, mul(mul(Uh, X), adjoint(Uh))), adjoint(Ug));
    const CMat direct = mul(mul(Ugh, X), adjoint(Ugh));
    CHECK(max_abs_diff(via_pair, direct) < 1e-8);
}

TEST_CASE("product states and expectations") {
    const SiteState site = even_state(0.7);
    const CarState st = product_state(site, 3);
    CHECK(st.density.rows() == 8);
    cplx tr = 0.0;
    for (int i = 0; i < 8; ++i) tr += st.density(i, i);
    CHECK(std::abs(tr - 1.0) < 1e-14);

    // number-operator expectation at each site equals rho(1,1)
    const CarSystem sys = jw_generators(3);
    for (int j = 0; j < 3; ++j) {
        const cplx nj = car_expect(st, mul(adjoint(sys.a[j]), sys.a[j]));
        CHECK(std::abs(nj - site.rho(1, 1)) < 1e-13);
    }
    // factorization across sites
    const cplx pair = car_expect(st, mul(mul(adjoint(sys.a[0]), sys.a[0]),
                                         mul(adjoint(sys.a[2]), sys.a[2])));
    CHECK(std::abs(pair - site.rho(1, 1) * site.rho(1, 1)) < 1e-13);
}

TEST_CASE("even product states are exchangeable, tilted ones are not") {
    for (int n : {3, 4}) {
        const CarSystem sys = jw_generators(n);
        CAPTURE(n);
        CHECK(invariance_gap(product_state(even_state(0.25), n), sys) < 1e-10);
        CHECK(invariance_gap(product_state(tilted_state(), n), sys) > 1e-3);
    }
}

TEST_CASE("symmetrize yields an exchangeable state") {
    const CarSystem sys = jw_generators(3);
    const CarState sym = symmetrize(product_state(tilted_state(), 3), sys);
    CHECK(invariance_gap(sym, sys) < 1e-10);
    cplx tr = 0.0;
    for (int i = 0; i < 8; ++i) tr += sym.density(i, i);
    CHECK(std::abs(tr - 1.0) < 1e-12);
}

TEST_CASE("fixed_point_expectation against a direct average") {
    const int n = 3;
    const CarSystem sys = jw_generators(n);
    CounterRng rng(32);
    const CMat X = rng.matrix(8, 8);

    // oracle: average the conjugated operator over every permutation unitary
    std::vector<int> I{1, 2, 3};
    const auto perms = enumerate_perms(I);
    CMat avg = CMat::zero(8, 8);
    for (const auto& g : perms) {
        const CMat U = permutation_unitary(sys, g);
        avg += mul(mul(U, X), adjoint(U));
    }
    avg *= cplx(1.0 / static_cast<double>(perms.size()));

    const CMat E = fixed_point_expectation(sys, X);
    CHECK(max_abs_diff(E, avg) < 1e-8);

    // E lands in the fixed-point algebra and is idempotent
    for (const auto& g : perms) {
        const CMat U = permutation_unitary(sys, g);
        CHECK(max_abs_diff(mul(mul(U, E), adjoint(U)), E) < 1e-8);
    }
    CHECK(max_abs_diff(fixed_point_expectation(sys, E), E) < 1e-8);
    CHECK(max_abs_diff(fixed_point_expectation(sys, CMat::identity(8)),
                       CMat::identity(8)) < 1e-10);
}
