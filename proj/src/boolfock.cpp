#include "qexch/boolfock.hpp"

#include <cmath>

namespace qexch {

BooleanOps boolean_ops(const BooleanSpace& space) {
    if (space.d < 1) throw rejected_input("boolean_ops: d must be positive");
    const int dim = space.dim();
    BooleanOps ops;
    for (int j = 1; j <= space.d; ++j) {
        CMat bj(dim, dim), bdagj(dim, dim);
        bj(0, j) = 1.0;    // b_j = |e_#><e_j|
        bdagj(j, 0) = 1.0; // bdag_j = |e_j><e_#|
        ops.r.push_back(bj + bdagj);
        ops.b.push_back(std::move(bj));
        ops.bdag.push_back(std::move(bdagj));
    }
    return ops;
}

std::map<UnitKey, CMat> matrix_units(const BooleanSpace& space, const BooleanOps& ops) {
    std::map<UnitKey, CMat> units;
    units[{0, 0}] = mul(ops.b[0], ops.bdag[0]); // e_## = b_i bdag_i
    for (int j = 1; j <= space.d; ++j) {
        units[{0, j}] = ops.b[j - 1];
        units[{j, 0}] = ops.bdag[j - 1];
        for (int i = 1; i <= space.d; ++i)
            units[{i, j}] = mul(ops.bdag[i - 1], ops.b[j - 1]);
    }
    return units;
}

cplx invariant_family_eval(const BooleanSpace& space, double gamma, const CMat& observable) {
    if (observable.rows() != space.dim() || observable.cols() != space.dim())
        throw rejected_input("invariant_family_eval: observable dimension mismatch");
    if (gamma < 0.0 || gamma > 1.0)
        throw rejected_input("invariant_family_eval: gamma must lie in [0,1]");
    const cplx vac = observable(0, 0);
    cplx site_trace = 0.0;
    for (int i = 1; i <= space.d; ++i) site_trace += observable(i, i);
    return gamma * vac + (1.0 - gamma) * site_trace / static_cast<double>(space.d);
}

int invariant_observable_dimension(const BooleanSpace& space) {
    // observables commuting with every site-permutation unitary; count by
    // orbit structure of entry positions under the diagonal action
    const int d = space.d;
    if (d == 1) return 4; // all of M_2
    // orbits: (#,#), (#,i), (i,#), (i,i), (i,j) i != j
    return 5;
}

CMat boolean_permute(const BooleanSpace& space, const Permutation& g, const CMat& obs) {
    const int dim = space.dim();
    if (obs.rows() != dim || obs.cols() != dim)
        throw rejected_input("boolean_permute: dimension mismatch");
    for (int p : g.support())
        if (p < 1 || p > space.d)
            throw rejected_input("boolean_permute: support outside sites");
    CMat out(dim, dim);
    auto img = [&](int i) { return i == 0 ? 0 : g(i); };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out(img(i), img(j)) = obs(i, j);
    return out;
}

ObstructionReport ce_obstruction(const BooleanSpace& space, const std::vector<cplx>& xi,
                                 const CMat& phi_site) {
    const int dim = space.dim();
    if (static_cast<int>(xi.size()) != dim)
        throw rejected_input("ce_obstruction: xi dimension mismatch");
    if (phi_site.rows() != space.d || phi_site.cols() != space.d)
        throw rejected_input("ce_obstruction: site state must act on the site block");
    double nrm = 0.0;
    for (const auto& v : xi) nrm += std::norm(v);
    if (std::abs(nrm - 1.0) > 1e-10) throw rejected_input("ce_obstruction: xi must be a unit vector");
    const double overlap_sq = std::norm(xi[0]);
    if (overlap_sq <= 1e-12 || overlap_sq >= 1.0 - 1e-12)
        throw rejected_input("ce_obstruction: need 0 < |<e_#,xi>| < 1");

    // A = |e_#><xi| : A x = <x, xi> e_#
    CMat A(dim, dim);
    for (int j = 0; j < dim; ++j) A(0, j) = std::conj(xi[j]);

    // F_phi(A) = omega_#(A) P_# + phi(P A P) P  with P = P_#^perp
    const cplx vac = A(0, 0);
    cplx phi_val = 0.0;
    for (int i = 1; i < dim; ++i)
        for (int j = 1; j < dim; ++j) phi_val += phi_site(j - 1, i - 1) * A(i, j);
    CMat F(dim, dim);
    F(0, 0) = vac;
    for (int i = 1; i < dim; ++i) F(i, i) = phi_val;

    auto omega_xi = [&](const CMat& X) { return vdot(qexch::apply(X, xi), xi); };
    const cplx denom = omega_xi(A);
    if (std::abs(denom) < 1e-14)
        throw internal_error("ce_obstruction: omega_xi(A) degenerate");
    const cplx ratio = omega_xi(F) / denom;
    if (std::abs(ratio.imag()) > 1e-10)
        throw internal_error("ce_obstruction: ratio unexpectedly complex");
    return ObstructionReport{ratio.real(), overlap_sq};
}

} // namespace qexch
