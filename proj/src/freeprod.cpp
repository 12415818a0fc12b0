#include "qexch/freeprod.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cmath>

namespace qexch {

namespace {

void prune(CanonicalElement& x) {
    if (std::abs(x.scalar) <= kPruneTol) x.scalar = 0.0;
    for (auto it = x.terms.begin(); it != x.terms.end();) {
        if (std::abs(it->second) <= kPruneTol)
            it = x.terms.erase(it);
        else
            ++it;
    }
}

void add_term(CanonicalElement& x, const BasisWord& w, cplx c) {
    if (w.empty()) {
        x.scalar += c;
        return;
    }
    x.terms[w] += c;
}

// Product of two reduced basis words; merges the junction letters through the
// structure tensor. A unit produced by a unital-mode merge contracts the word,
// which may create a fresh same-site junction, hence the recursion.
void mul_words(const SiteAlgebra& alg, Mode mode, const BasisWord& u, const BasisWord& v,
               cplx coeff, CanonicalElement& out) {
    if (u.empty() || v.empty()) {
        BasisWord w = u.empty() ? v : u;
        add_term(out, w, coeff);
        return;
    }
    if (u.back().site != v.front().site) {
        BasisWord w = u;
        w.insert(w.end(), v.begin(), v.end());
        add_term(out, w, coeff);
        return;
    }
    const int site = u.back().site;
    const std::vector<cplx>& c = alg.structure(u.back().label, v.front().label);
    BasisWord u2(u.begin(), u.end() - 1);
    BasisWord v2(v.begin() + 1, v.end());
    for (int l = 1; l <= alg.basis_size(); ++l) {
        const cplx cl = c[l - 1];
        if (std::abs(cl) <= kPruneTol) continue;
        if (mode == Mode::Unital && l == 1) {
            mul_words(alg, mode, u2, v2, coeff * cl, out);
        } else {
            BasisWord w = u2;
            w.push_back(Letter{site, l});
            w.insert(w.end(), v2.begin(), v2.end());
            add_term(out, w, coeff * cl);
        }
    }
}

} // namespace

SiteAlgebra::SiteAlgebra(int dim, std::vector<CMat> basis)
    : dim_(dim), basis_(std::move(basis)) {
    const int k2 = dim * dim;
    if (static_cast<int>(basis_.size()) != k2)
        throw rejected_input("SiteAlgebra: basis must have k^2 elements");
    for (const auto& b : basis_)
        if (b.rows() != dim || b.cols() != dim)
            throw rejected_input("SiteAlgebra: basis element has wrong shape");
    if (max_abs_diff(basis_[0], CMat::identity(dim)) > 1e-12)
        throw rejected_input("SiteAlgebra: first basis element must be the unit");

    // invert the vectorized basis once; expansion is then a matrix-vector solve
    Eigen::MatrixXcd B(k2, k2);
    for (int l = 0; l < k2; ++l)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) B(i * dim + j, l) = basis_[l](i, j);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(B);
    if (!lu.isInvertible())
        throw rejected_input("SiteAlgebra: basis is not linearly independent");
    Eigen::MatrixXcd Binv = lu.inverse();
    expand_lu_.assign(Binv.data(), Binv.data() + k2 * k2); // column-major

    structure_.resize(static_cast<std::size_t>(k2) * k2);
    for (int i = 1; i <= k2; ++i)
        for (int j = 1; j <= k2; ++j) {
            const CMat prod = mul(basis_[i - 1], basis_[j - 1]);
            std::vector<cplx> c = expand(prod);
            // structure tensor must reproduce the product
            CMat recon(dim, dim);
            for (int l = 0; l < k2; ++l) recon += c[l] * basis_[l];
            if (max_abs_diff(recon, prod) > 1e-12)
                throw internal_error("SiteAlgebra: structure tensor inconsistent");
            structure_[(i - 1) * k2 + (j - 1)] = std::move(c);
        }
}

SiteAlgebra SiteAlgebra::pauli() {
    const cplx i(0.0, 1.0);
    CMat id = CMat::identity(2);
    CMat sx(2, 2), sy(2, 2), sz(2, 2);
    sx(0, 1) = 1;
    sx(1, 0) = 1;
    sy(0, 1) = -i;
    sy(1, 0) = i;
    sz(0, 0) = 1;
    sz(1, 1) = -1;
    return SiteAlgebra(2, {id, sx, sy, sz});
}

std::vector<cplx> SiteAlgebra::expand(const CMat& a) const {
    if (a.rows() != dim_ || a.cols() != dim_)
        throw rejected_input("SiteAlgebra::expand: dimension mismatch");
    const int k2 = dim_ * dim_;
    std::vector<cplx> vec(k2), out(k2, 0.0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) vec[i * dim_ + j] = a(i, j);
    for (int r = 0; r < k2; ++r) {
        cplx s = 0.0;
        for (int c = 0; c < k2; ++c) s += expand_lu_[c * k2 + r] * vec[c];
        out[r] = s;
    }
    return out;
}

CanonicalElement fp_zero(Mode mode) {
    CanonicalElement x;
    x.mode = mode;
    return x;
}

CanonicalElement fp_one() {
    CanonicalElement x;
    x.mode = Mode::Unital;
    x.scalar = 1.0;
    return x;
}

CanonicalElement fp_word(Mode mode, const BasisWord& w, cplx coeff) {
    CanonicalElement x;
    x.mode = mode;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].site == w[i + 1].site)
            throw rejected_input("fp_word: adjacent letters share a site");
    for (const auto& l : w)
        if (l.label < 1 || (mode == Mode::Unital && l.label < 2))
            throw rejected_input("fp_word: letter label out of range for mode");
    if (w.empty()) {
        if (mode == Mode::NonUnital)
            throw rejected_input("fp_word: empty word needs unital mode");
        return x;
    }
    x.terms[w] = coeff;
    prune(x);
    return x;
}

CanonicalElement embed_letter(const SiteAlgebra& alg, int site, const CMat& a, Mode mode) {
    std::vector<cplx> c = alg.expand(a);
    CanonicalElement x;
    x.mode = mode;
    const int first = (mode == Mode::Unital) ? 2 : 1;
    if (mode == Mode::Unital) x.scalar = c[0];
    for (int l = first; l <= alg.basis_size(); ++l)
        if (std::abs(c[l - 1]) > kPruneTol) x.terms[{Letter{site, l}}] = c[l - 1];
    prune(x);
    return x;
}

double fp_distance(const CanonicalElement& x, const CanonicalElement& y) {
    if (x.mode != y.mode) throw rejected_input("fp_distance: mixed modes");
    double d = std::abs(x.scalar - y.scalar);
    for (const auto& [w, c] : x.terms) {
        const auto it = y.terms.find(w);
        d = std::max(d, std::abs(c - (it == y.terms.end() ? cplx(0.0) : it->second)));
    }
    for (const auto& [w, c] : y.terms)
        if (!x.terms.count(w)) d = std::max(d, std::abs(c));
    return d;
}

CanonicalElement fp_add(const CanonicalElement& x, const CanonicalElement& y) {
    if (x.mode != y.mode) throw rejected_input("fp_add: mode mismatch");
    CanonicalElement z = x;
    z.scalar += y.scalar;
    for (const auto& [w, c] : y.terms) z.terms[w] += c;
    prune(z);
    return z;
}

CanonicalElement fp_scale(cplx s, const CanonicalElement& x) {
    CanonicalElement z = x;
    z.scalar *= s;
    for (auto& [w, c] : z.terms) c *= s;
    prune(z);
    return z;
}

CanonicalElement fp_mul(const SiteAlgebra& alg, const CanonicalElement& x,
                        const CanonicalElement& y) {
    if (x.mode != y.mode) throw rejected_input("fp_mul: mode mismatch");
    CanonicalElement z;
    z.mode = x.mode;
    z.scalar = x.scalar * y.scalar;
    for (const auto& [w, c] : y.terms) z.terms[w] += x.scalar * c;
    for (const auto& [w, c] : x.terms) z.terms[w] += c * y.scalar;
    for (const auto& [u, cu] : x.terms)
        for (const auto& [v, cv] : y.terms) mul_words(alg, x.mode, u, v, cu * cv, z);
    prune(z);
    return z;
}

CanonicalElement fp_adjoint(const SiteAlgebra& alg, const CanonicalElement& x) {
    CanonicalElement z;
    z.mode = x.mode;
    z.scalar = std::conj(x.scalar);
    for (const auto& [w, c] : x.terms) {
        // reverse the word, adjoint each letter, rebuild through the product
        CanonicalElement acc =
            (x.mode == Mode::Unital) ? fp_one() : fp_zero(Mode::NonUnital);
        bool first = true;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            CanonicalElement lett =
                embed_letter(alg, it->site, adjoint(alg.basis(it->label)), x.mode);
            if (first && x.mode == Mode::NonUnital) {
                acc = lett;
                first = false;
            } else {
                acc = fp_mul(alg, acc, lett);
            }
        }
        z = fp_add(z, fp_scale(std::conj(c), acc));
    }
    prune(z);
    return z;
}

CanonicalElement fp_permute(const Permutation& g, const CanonicalElement& x) {
    CanonicalElement z;
    z.mode = x.mode;
    z.scalar = x.scalar;
    for (const auto& [w, c] : x.terms) {
        BasisWord w2 = w;
        for (auto& l : w2) l.site = g(l.site);
        z.terms[w2] += c;
    }
    prune(z);
    return z;
}

CanonicalElement fp_quotient(const SiteAlgebra& alg, const CanonicalElement& x) {
    if (x.mode != Mode::NonUnital)
        throw rejected_input("fp_quotient: input must be non-unital");
    CanonicalElement z = fp_zero(Mode::Unital);
    for (const auto& [w, c] : x.terms) {
        CanonicalElement acc = fp_one();
        for (const auto& l : w)
            acc = fp_mul(alg, acc, embed_letter(alg, l.site, alg.basis(l.label), Mode::Unital));
        z = fp_add(z, fp_scale(c, acc));
    }
    prune(z);
    return z;
}

void validate_rep(const SiteAlgebra& alg, const ProcessRep& rep, double tol) {
    const int k2 = alg.basis_size();
    double nrm = 0.0;
    for (const auto& v : rep.cyclic_vector) nrm += std::norm(v);
    if (std::abs(std::sqrt(nrm) - 1.0) > tol)
        throw rejected_input("validate_rep: cyclic vector is not a unit vector");
    for (const auto& [site, imgs] : rep.site_maps) {
        if (static_cast<int>(imgs.size()) != k2)
            throw rejected_input("validate_rep: wrong number of basis images");
        if (max_abs_diff(imgs[0], CMat::identity(rep.space_dim)) > tol)
            throw rejected_input("validate_rep: site map is not unital");
        for (int i = 1; i <= k2; ++i) {
            if (max_abs_diff(adjoint(imgs[i - 1]), [&] {
                    std::vector<cplx> c = alg.expand(adjoint(alg.basis(i)));
                    CMat m(rep.space_dim, rep.space_dim);
                    for (int l = 0; l < k2; ++l) m += c[l] * imgs[l];
                    return m;
                }()) > tol)
                throw rejected_input("validate_rep: site map does not preserve adjoints");
            for (int j = 1; j <= k2; ++j) {
                const std::vector<cplx>& c = alg.structure(i, j);
                CMat m(rep.space_dim, rep.space_dim);
                for (int l = 0; l < k2; ++l) m += c[l] * imgs[l];
                if (max_abs_diff(mul(imgs[i - 1], imgs[j - 1]), m) > tol)
                    throw rejected_input("validate_rep: site map does not preserve products");
            }
        }
    }
}

CMat fp_operator(const CanonicalElement& x, const ProcessRep& rep) {
    CMat m(rep.space_dim, rep.space_dim);
    for (int i = 0; i < rep.space_dim; ++i) m(i, i) = x.scalar;
    for (const auto& [w, c] : x.terms) {
        CMat prod = CMat::identity(rep.space_dim);
        for (const auto& l : w) {
            auto it = rep.site_maps.find(l.site);
            if (it == rep.site_maps.end())
                throw rejected_input("fp_operator: missing site map");
            prod = mul(prod, it->second[l.label - 1]);
        }
        m += c * prod;
    }
    return m;
}

cplx fp_eval(const CanonicalElement& x, const ProcessRep& rep) {
    return vdot(qexch::apply(fp_operator(x, rep), rep.cyclic_vector), rep.cyclic_vector);
}

std::string fp_to_json(const CanonicalElement& x) {
    nlohmann::json j;
    j["mode"] = (x.mode == Mode::Unital) ? "unital" : "non-unital";
    j["scalar"] = {x.scalar.real(), x.scalar.imag()};
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, c] : x.terms) { // std::map iterates words lexicographically
        nlohmann::json word = nlohmann::json::array();
        for (const auto& l : w) word.push_back({l.site, l.label});
        terms.push_back({{"word", word}, {"coeff", {c.real(), c.imag()}}});
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

CanonicalElement fp_from_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        CanonicalElement x;
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "unital")
            x.mode = Mode::Unital;
        else if (mode == "non-unital")
            x.mode = Mode::NonUnital;
        else
            throw rejected_input("fp_from_json: unknown mode '" + mode + "'");
        x.scalar = cplx(j.at("scalar")[0].get<double>(), j.at("scalar")[1].get<double>());
        if (x.mode == Mode::NonUnital && x.scalar != cplx(0.0))
            throw rejected_input("fp_from_json: nonzero scalar in non-unital mode");
        for (const auto& t : j.at("terms")) {
            BasisWord w;
            for (const auto& l : t.at("word"))
                w.push_back(Letter{l[0].get<int>(), l[1].get<int>()});
            const cplx c(t.at("coeff")[0].get<double>(), t.at("coeff")[1].get<double>());
            fp_word(x.mode, w, c); // validates the canonical-word invariants
            if (x.terms.count(w))
                throw rejected_input("fp_from_json: duplicate word");
            x.terms[w] = c;
        }
        return x;
    } catch (const nlohmann::json::exception& e) {
        throw rejected_input(std::string("fp_from_json: ") + e.what());
    }
}

} // namespace qexch
