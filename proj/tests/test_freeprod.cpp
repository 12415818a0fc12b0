#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qexch/freeprod.hpp"
#include "qexch/rng.hpp"

#include <cmath>

using namespace qexch;

namespace {

const cplx kI{0.0, 1.0};

CanonicalElement random_element(CounterRng& rng, Mode mode, int max_sites, int max_len) {
    CanonicalElement x = fp_zero(mode);
    const int terms = rng.uniform_int(1, 3);
    for (int t = 0; t < terms; ++t) {
        BasisWord w;
        int prev_site = 0;
        const int len = rng.uniform_int(mode == Mode::Unital ? 0 : 1, max_len);
        for (int l = 0; l < len; ++l) {
            int site = rng.uniform_int(1, max_sites);
            while (site == prev_site) site = rng.uniform_int(1, max_sites);
            const int lo = (mode == Mode::Unital) ? 2 : 1;
            w.push_back({site, rng.uniform_int(lo, 4)});
            prev_site = site;
        }
        x = fp_add(x, fp_word(mode, w, rng.complex_unit_box()));
    }
    return x;
}

// Hadamard, unitary
CMat hadamard() {
    CMat h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h(0, 0) = s;
    h(0, 1) = s;
    h(1, 0) = s;
    h(1, 1) = -s;
    return h;
}

ProcessRep two_site_rep(const SiteAlgebra& alg) {
    ProcessRep rep;
    rep.space_dim = 2;
    rep.cyclic_vector = {1.0, 0.0};
    const CMat h = hadamard();
    std::vector<CMat> id_imgs, h_imgs;
    for (int l = 1; l <= 4; ++l) {
        id_imgs.push_back(alg.basis(l));
        h_imgs.push_back(mul(mul(h, alg.basis(l)), adjoint(h)));
    }
    rep.site_maps[1] = id_imgs;
    rep.site_maps[2] = h_imgs;
    return rep;
}

} // namespace

TEST_CASE("pauli site algebra structure") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    CHECK(alg.dim() == 2);
    CHECK(alg.basis_size() == 4);
    CHECK(max_abs_diff(alg.basis(1), CMat::identity(2)) == 0.0);

    // expand is the coordinate map: sigma_x + 2i sigma_z
    CMat a(2, 2);
    a(0, 0) = 2.0 * kI;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = -2.0 * kI;
    const auto coeffs = alg.expand(a);
    REQUIRE(coeffs.size() == 4);
    CHECK(std::abs(coeffs[0]) < 1e-14);
    CHECK(std::abs(coeffs[1] - 1.0) < 1e-14);
    CHECK(std::abs(coeffs[2]) < 1e-14);
    CHECK(std::abs(coeffs[3] - 2.0 * kI) < 1e-14);

    // structure constants: sigma_x sigma_y = i sigma_z
    const auto& st = alg.structure(2, 3);
    CHECK(std::abs(st[0]) < 1e-14);
    CHECK(std::abs(st[3] - kI) < 1e-14);

    // unit must come first
    CHECK_THROWS_AS(SiteAlgebra(2, std::vector<CMat>{alg.basis(2), alg.basis(1),
                                                     alg.basis(3), alg.basis(4)}),
                    rejected_input);
}

TEST_CASE("word products: concatenation and same-site merge") {
    const SiteAlgebra alg = SiteAlgebra::pauli();

    // distinct sites concatenate
    const auto xy = fp_mul(alg, fp_word(Mode::NonUnital, {{1, 2}}),
                           fp_word(Mode::NonUnital, {{2, 3}}));
    REQUIRE(xy.terms.size() == 1);
    CHECK(xy.terms.begin()->first == BasisWord{{1, 2}, {2, 3}});
    CHECK(xy.terms.begin()->second == cplx(1.0));

    // same site merges through the structure tensor: sigma_x sigma_y = i sigma_z
    const auto m = fp_mul(alg, fp_word(Mode::NonUnital, {{1, 2}}),
                          fp_word(Mode::NonUnital, {{1, 3}}));
    REQUIRE(m.terms.size() == 1);
    CHECK(m.terms.begin()->first == BasisWord{{1, 4}});
    CHECK(std::abs(m.terms.begin()->second - kI) < 1e-14);

    // sigma_x^2 = unit stays a word in the non-unital algebra
    const auto sq = fp_mul(alg, fp_word(Mode::NonUnital, {{1, 2}}),
                           fp_word(Mode::NonUnital, {{1, 2}}));
    REQUIRE(sq.terms.size() == 1);
    CHECK(sq.terms.begin()->first == BasisWord{{1, 1}});
    CHECK(sq.scalar == cplx(0.0));
}

TEST_CASE("unital merge contracts recursively") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    // sigma_x^2 at one site becomes the scalar 1
    const auto sq = fp_mul(alg, fp_word(Mode::Unital, {{1, 2}}),
                           fp_word(Mode::Unital, {{1, 2}}));
    CHECK(sq.terms.empty());
    CHECK(std::abs(sq.scalar - 1.0) < 1e-14);

    // cascade: (s2 s1)(s1 s2) with sigma_x everywhere collapses to 1
    const auto casc = fp_mul(alg, fp_word(Mode::Unital, {{2, 2}, {1, 2}}),
                             fp_word(Mode::Unital, {{1, 2}, {2, 2}}));
    CHECK(casc.terms.empty());
    CHECK(std::abs(casc.scalar - 1.0) < 1e-14);

    // unit labels are rejected inside unital words
    CHECK_THROWS_AS(fp_word(Mode::Unital, {{1, 1}}), rejected_input);
}

TEST_CASE("adjoint reverses words and conjugates coefficients") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    const auto x = fp_word(Mode::NonUnital, {{1, 2}, {2, 3}}, cplx(2.0, 1.0));
    const auto xs = fp_adjoint(alg, x);
    REQUIRE(xs.terms.size() == 1);
    // Pauli matrices are self-adjoint, so only the order flips
    CHECK(xs.terms.begin()->first == BasisWord{{2, 3}, {1, 2}});
    CHECK(std::abs(xs.terms.begin()->second - cplx(2.0, -1.0)) < 1e-14);
    CHECK(fp_distance(fp_adjoint(alg, xs), x) < 1e-14);
}

TEST_CASE("permutation action relabels sites") {
    const auto x = fp_word(Mode::NonUnital, {{1, 2}, {2, 3}}, kI);
    const auto gx = fp_permute(Permutation::transposition(1, 3), x);
    REQUIRE(gx.terms.size() == 1);
    CHECK(gx.terms.begin()->first == BasisWord{{3, 2}, {2, 3}});
    // group action: (gh).x = g.(h.x)
    const Permutation g = Permutation::transposition(2, 4);
    const Permutation h = Permutation::transposition(1, 2);
    CHECK(fp_distance(fp_permute(g.compose(h), x), fp_permute(g, fp_permute(h, x))) == 0.0);
}

TEST_CASE("quotient splits off unit components and re-merges") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    // pure traceless letters pass through unchanged
    const auto w = fp_word(Mode::NonUnital, {{1, 2}, {2, 3}});
    const auto qw = fp_quotient(alg, w);
    CHECK(qw.mode == Mode::Unital);
    REQUIRE(qw.terms.size() == 1);
    CHECK(qw.terms.begin()->first == BasisWord{{1, 2}, {2, 3}});
    CHECK(std::abs(qw.scalar) < 1e-14);

    // a unit letter becomes the scalar 1
    const auto qu = fp_quotient(alg, fp_word(Mode::NonUnital, {{1, 1}}));
    CHECK(qu.terms.empty());
    CHECK(std::abs(qu.scalar - 1.0) < 1e-14);

    // degree 2 with a unit letter drops to degree 1
    const auto q2 = fp_quotient(alg, fp_word(Mode::NonUnital, {{1, 1}, {2, 4}}, 3.0));
    REQUIRE(q2.terms.size() == 1);
    CHECK(q2.terms.begin()->first == BasisWord{{2, 4}});
    CHECK(std::abs(q2.terms.begin()->second - 3.0) < 1e-14);

    // quotient is a *-homomorphism on random inputs
    for (int c = 0; c < 50; ++c) {
        CounterRng rng(77, c);
        const auto x = random_element(rng, Mode::NonUnital, 3, 3);
        const auto y = random_element(rng, Mode::NonUnital, 3, 3);
        CHECK(fp_distance(fp_quotient(alg, fp_mul(alg, x, y)),
                          fp_mul(alg, fp_quotient(alg, x), fp_quotient(alg, y))) < 1e-12);
        CHECK(fp_distance(fp_quotient(alg, fp_adjoint(alg, x)),
                          fp_adjoint(alg, fp_quotient(alg, x))) < 1e-12);
    }
}

TEST_CASE("quotient commutes with the permutation action") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    for (int c = 0; c < 50; ++c) {
        CounterRng rng(78, c);
        const auto x = random_element(rng, Mode::NonUnital, 4, 3);
        const Permutation g = Permutation::from_images({1, 2, 3, 4}, {3, 1, 4, 2});
        CHECK(fp_distance(fp_quotient(alg, fp_permute(g, x)),
                          fp_permute(g, fp_quotient(alg, x))) < 1e-12);
    }
}

TEST_CASE("algebra laws on random elements") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    for (int c = 0; c < 100; ++c) {
        CounterRng rng(79, c);
        const Mode mode = (c % 2 == 0) ? Mode::NonUnital : Mode::Unital;
        const auto x = random_element(rng, mode, 3, 3);
        const auto y = random_element(rng, mode, 3, 3);
        const auto z = random_element(rng, mode, 3, 3);
        CHECK(fp_distance(fp_mul(alg, fp_mul(alg, x, y), z),
                          fp_mul(alg, x, fp_mul(alg, y, z))) < 1e-12);
        CHECK(fp_distance(fp_adjoint(alg, fp_mul(alg, x, y)),
                          fp_mul(alg, fp_adjoint(alg, y), fp_adjoint(alg, x))) < 1e-12);
        // distributivity
        CHECK(fp_distance(fp_mul(alg, x, fp_add(y, z)),
                          fp_add(fp_mul(alg, x, y), fp_mul(alg, x, z))) < 1e-12);
    }
}

TEST_CASE("process representation evaluation") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    const ProcessRep rep = two_site_rep(alg);
    validate_rep(alg, rep);

    // frozen scalars: <sigma_z e1, e1> = 1 and H sigma_x H = sigma_z
    CHECK(std::abs(fp_eval(fp_word(Mode::NonUnital, {{1, 4}}), rep) - 1.0) < 1e-12);
    CHECK(std::abs(fp_eval(fp_word(Mode::NonUnital, {{2, 2}}), rep) - 1.0) < 1e-12);
    // sigma_x * (H sigma_x H) = sigma_x sigma_z has zero diagonal
    CHECK(std::abs(fp_eval(fp_word(Mode::NonUnital, {{1, 2}, {2, 2}}), rep)) < 1e-12);

    // fp_operator matches a hand-built matrix product
    const CMat h = hadamard();
    const CMat byhand = mul(alg.basis(3), mul(mul(h, alg.basis(2)), adjoint(h)));
    const CMat viafp = fp_operator(fp_word(Mode::NonUnital, {{1, 3}, {2, 2}}), rep);
    CHECK(max_abs_diff(byhand, viafp) < 1e-13);

    // a non-unit cyclic vector is rejected
    ProcessRep bad = rep;
    bad.cyclic_vector = {2.0, 0.0};
    CHECK_THROWS_AS(validate_rep(alg, bad), rejected_input);
}

TEST_CASE("json round trip is bit exact") {
    for (int c = 0; c < 50; ++c) {
        CounterRng rng(80, c);
        const Mode mode = (c % 2 == 0) ? Mode::NonUnital : Mode::Unital;
        CanonicalElement x = random_element(rng, mode, 4, 4);
        x.scalar = (mode == Mode::Unital) ? rng.complex_unit_box() : cplx(0.0);
        const CanonicalElement back = fp_from_json(fp_to_json(x));
        CHECK(back == x);
    }
    CHECK_THROWS_AS(fp_from_json("{not json"), rejected_input);
    CHECK_THROWS_AS(fp_from_json(R"({"mode":"bogus","scalar":[0,0],"terms":[]})"),
                    rejected_input);
}

TEST_CASE("mode mixing is rejected") {
    const SiteAlgebra alg = SiteAlgebra::pauli();
    const auto nu = fp_word(Mode::NonUnital, {{1, 2}});
    const auto un = fp_word(Mode::Unital, {{1, 2}});
    CHECK_THROWS_AS(fp_mul(alg, nu, un), rejected_input);
    CHECK_THROWS_AS(fp_add(nu, un), rejected_input);
}
