#include "qexch/car.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qexch {

namespace {

CMat conj_entries(const CMat& a) {
    CMat c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

CMat transpose(const CMat& a) { return conj_entries(adjoint(a)); }

// Least-squares intertwiner: smallest eigenvector of
// K = sum_j K_j^dag K_j,  K_j vec(U) = vec(a_{g(j)} U - U a_j),
// with the adjoint generators included so the solution space is
// one-dimensional (the a_j, a_j^dag generate all of M_{2^n}).
CMat solve_intertwiner(const CarSystem& sys, const Permutation& g) {
    const int D = 1 << sys.n;
    const int D2 = D * D;
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(D2, D2);
    auto accumulate = [&](const CMat& A, const CMat& B) {
        // K += (kron(A,I) - kron(I,B^T))^dag (kron(A,I) - kron(I,B^T))
        const CMat AdA = mul(adjoint(A), A);
        const CMat Bt = transpose(B);
        const CMat Bc = conj_entries(B);
        const CMat BcBt = mul(Bc, Bt);
        const CMat Ad = adjoint(A);
        const CMat t1 = kron(AdA, CMat::identity(D));
        const CMat t2 = kron(CMat::identity(D), BcBt);
        const CMat t3 = kron(Ad, Bt);
        const CMat t4 = kron(A, Bc);
        for (int r = 0; r < D2; ++r)
            for (int c = 0; c < D2; ++c)
                K(r, c) += t1(r, c) + t2(r, c) - t3(r, c) - t4(r, c);
    };
    for (int j = 1; j <= sys.n; ++j) {
        const CMat& aj = sys.a[j - 1];
        const CMat& agj = sys.a[g(j) - 1];
        accumulate(agj, aj);
        accumulate(adjoint(agj), adjoint(aj));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
    if (es.eigenvalues()(0) > 1e-8 || es.eigenvalues()(1) < 1e-8)
        throw internal_error("permutation_unitary: intertwiner space is not one-dimensional");
    Eigen::VectorXcd v = es.eigenvectors().col(0);
    CMat U(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) U(i, j) = v(i * D + j); // row-major vec
    // scale to a unitary and fix the global phase
    const double c = frob_norm(U) / std::sqrt(static_cast<double>(D));
    U *= cplx(1.0 / c);
    cplx top = 0.0;
    for (const auto& e : U.data())
        if (std::abs(e) > std::abs(top)) top = e;
    U *= std::conj(top) / std::abs(top);
    return U;
}

void verify_intertwiner(const CarSystem& sys, const Permutation& g, const CMat& U) {
    const CMat Ud = adjoint(U);
    for (int j = 1; j <= sys.n; ++j) {
        const CMat lhs = mul(mul(U, sys.a[j - 1]), Ud);
        if (max_abs_diff(lhs, sys.a[g(j) - 1]) > 1e-10)
            throw internal_error("permutation_unitary: intertwiner verification failed");
    }
}

// g as a product of adjacent transpositions, applied to a precomputed table
// s[j] = U_{(j+1, j+2)}.
CMat compose_from_transpositions(const CarSystem& sys, const Permutation& g,
                                 const std::vector<CMat>& s) {
    const int D = 1 << sys.n;
    std::vector<int> img(sys.n);
    for (int i = 0; i < sys.n; ++i) img[i] = g(i + 1);
    CMat U = CMat::identity(D);
    // bubble sort img to identity; each swap right-multiplies g by an
    // adjacent transposition, so U_g accumulates on the left
    bool moved = true;
    while (moved) {
        moved = false;
        for (int j = 0; j + 1 < sys.n; ++j) {
            if (img[j] > img[j + 1]) {
                std::swap(img[j], img[j + 1]);
                U = mul(s[j], U);
                moved = true;
            }
        }
    }
    return U;
}

std::vector<CMat> transposition_table(const CarSystem& sys) {
    std::vector<CMat> s;
    for (int j = 1; j < sys.n; ++j) {
        Permutation t = Permutation::transposition(j, j + 1);
        CMat U = solve_intertwiner(sys, t);
        verify_intertwiner(sys, t, U);
        s.push_back(std::move(U));
    }
    return s;
}

} // namespace

CarSystem jw_generators(int n) {
    if (n < 1 || n > kCarMaxModes)
        throw resource_limit("jw_generators: n out of range");
    CMat Z(2, 2), lower(2, 2), I2 = CMat::identity(2);
    Z(0, 0) = 1;
    Z(1, 1) = -1;
    lower(0, 1) = 1; // sigma^-: a e_2 = e_1
    CarSystem sys;
    sys.n = n;
    for (int j = 1; j <= n; ++j) {
        CMat aj(1, 1);
        aj(0, 0) = 1;
        for (int k = 1; k <= n; ++k)
            aj = kron(aj, k < j ? Z : (k == j ? lower : I2));
        sys.a.push_back(std::move(aj));
    }
    CMat P(1, 1);
    P(0, 0) = 1;
    for (int k = 0; k < n; ++k) P = kron(P, Z);
    sys.parity_unitary = std::move(P);
    return sys;
}

double car_relations_residual(const CarSystem& sys) {
    const int D = 1 << sys.n;
    const CMat I = CMat::identity(D);
    double worst = 0.0;
    auto anti = [](const CMat& x, const CMat& y) { return mul(x, y) + mul(y, x); };
    for (int j = 0; j < sys.n; ++j)
        for (int k = 0; k < sys.n; ++k) {
            CMat rel = anti(adjoint(sys.a[j]), sys.a[k]);
            if (j == k) rel -= I;
            worst = std::max(worst, max_abs_diff(rel, CMat::zero(D, D)));
            worst = std::max(worst,
                             max_abs_diff(anti(sys.a[j], sys.a[k]), CMat::zero(D, D)));
        }
    return worst;
}

bool is_even_site_state(const SiteState& s, double tol) {
    CMat Z(2, 2);
    Z(0, 0) = 1;
    Z(1, 1) = -1;
    return max_abs_diff(mul(s.rho, Z), mul(Z, s.rho)) <= tol;
}

CMat permutation_unitary(const CarSystem& sys, const Permutation& g) {
    for (int p : g.support())
        if (p < 1 || p > sys.n)
            throw rejected_input("permutation_unitary: support outside {1..n}");
    if (g.is_identity()) return CMat::identity(1 << sys.n);
    CMat U = solve_intertwiner(sys, g);
    verify_intertwiner(sys, g, U);
    return U;
}

CarState product_state(const SiteState& site, int n) {
    if (site.rho.rows() != 2 || site.rho.cols() != 2)
        throw rejected_input("product_state: site state must be 2x2");
    CMat rho(1, 1);
    rho(0, 0) = 1;
    for (int k = 0; k < n; ++k) rho = kron(rho, site.rho);
    return CarState{std::move(rho)};
}

cplx car_expect(const CarState& st, const CMat& X) {
    if (!st.density.same_shape(X)) throw rejected_input("car_expect: shape mismatch");
    cplx s = 0.0;
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) s += st.density(i, j) * X(j, i);
    return s;
}

CarState state_permute(const CarState& st, const CarSystem& sys, const Permutation& g) {
    CMat U = permutation_unitary(sys, g);
    return CarState{mul(mul(adjoint(U), st.density), U)};
}

CarState symmetrize(const CarState& st, const CarSystem& sys) {
    if (sys.n > kCarMaxPermModes)
        throw resource_limit("symmetrize: n! unitary guard exceeded");
    const std::vector<CMat> s = transposition_table(sys);
    std::vector<int> I(sys.n);
    std::iota(I.begin(), I.end(), 1);
    const std::vector<Permutation> perms = enumerate_perms(I);
    const int D = 1 << sys.n;
    CMat acc(D, D);
    for (const auto& g : perms) {
        const CMat U = compose_from_transpositions(sys, g, s);
        acc += mul(mul(adjoint(U), st.density), U);
    }
    acc *= cplx(1.0 / static_cast<double>(perms.size()));
    return CarState{std::move(acc)};
}

CMat fixed_point_expectation(const CarSystem& sys, const CMat& X) {
    if (sys.n > kCarMaxPermModes)
        throw resource_limit("fixed_point_expectation: n! unitary guard exceeded");
    const int D = 1 << sys.n;
    if (X.rows() != D || X.cols() != D)
        throw rejected_input("fixed_point_expectation: operator dimension mismatch");
    const std::vector<CMat> s = transposition_table(sys);
    std::vector<int> I(sys.n);
    std::iota(I.begin(), I.end(), 1);
    const std::vector<Permutation> perms = enumerate_perms(I);
    const int nperm = static_cast<int>(perms.size());
    const int chunk = 32;
    const int nchunks = (nperm + chunk - 1) / chunk;
    std::vector<CMat> partial(nchunks, CMat(D, D));
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nchunks; ++c) {
        CMat local(D, D);
        const int hi = std::min(nperm, (c + 1) * chunk);
        for (int k = c * chunk; k < hi; ++k) {
            const CMat U = compose_from_transpositions(sys, perms[k], s);
            local += mul(mul(U, X), adjoint(U));
        }
        partial[c] = std::move(local);
    }
    CMat acc(D, D);
    for (const auto& p : partial) acc += p; // fixed chunk order
    acc *= cplx(1.0 / static_cast<double>(nperm));
    return acc;
}

} // namespace qexch
