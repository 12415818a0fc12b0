#ifndef QEXCH_FREEPROD_HPP
#define QEXCH_FREEPROD_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qexch/cmat.hpp"
#include "qexch/perm.hpp"

namespace qexch {

// The single k x k matrix algebra whose copies generate the free product.
// basis[0] must be the unit; the span of basis[1..k^2-1] is the complement W
// used by the unital mode and the quotient map.
class SiteAlgebra {
public:
    SiteAlgebra(int dim, std::vector<CMat> basis);

    // M_2 with basis {I, sigma_x, sigma_y, sigma_z}.
    static SiteAlgebra pauli();

    int dim() const { return dim_; }
    int basis_size() const { return static_cast<int>(basis_.size()); }
    const CMat& basis(int label) const { return basis_[label - 1]; } // labels 1-based

    // Coefficients of a in the fixed basis (length k^2).
    std::vector<cplx> expand(const CMat& a) const;

    // Coefficients of basis(i)*basis(j) in the fixed basis (precomputed).
    const std::vector<cplx>& structure(int i, int j) const {
        return structure_[(i - 1) * basis_size() + (j - 1)];
    }

private:
    int dim_;
    std::vector<CMat> basis_;
    std::vector<std::vector<cplx>> structure_;
    std::vector<cplx> expand_lu_; // k^2 x k^2 inverse of the vectorized basis
};

enum class Mode { NonUnital, Unital };

struct Letter {
    int site;
    int label; // 1-based basis label; >= 2 in unital mode
    auto operator<=>(const Letter&) const = default;
};

using BasisWord = std::vector<Letter>;

// Finite linear combination of reduced basis words, in canonical form: no
// zero coefficients, adjacent letters on distinct sites, and (unital mode) no
// unit labels inside words. The scalar field is the coefficient of the empty
// word and stays 0 in non-unital mode.
struct CanonicalElement {
    Mode mode = Mode::NonUnital;
    cplx scalar = 0.0;
    std::map<BasisWord, cplx> terms;

    bool operator==(const CanonicalElement& o) const {
        return mode == o.mode && scalar == o.scalar && terms == o.terms;
    }
};

inline constexpr double kPruneTol = 1e-14;

CanonicalElement fp_zero(Mode mode);
CanonicalElement fp_one(); // unital mode scalar 1
CanonicalElement fp_word(Mode mode, const BasisWord& w, cplx coeff = 1.0);

// Canonical embedding of a site-algebra element at the given site.
CanonicalElement embed_letter(const SiteAlgebra& alg, int site, const CMat& a, Mode mode);

// Largest coefficient gap between two elements (infinity-norm of x - y over
// the union of their words plus the scalar part).
double fp_distance(const CanonicalElement& x, const CanonicalElement& y);

CanonicalElement fp_add(const CanonicalElement& x, const CanonicalElement& y);
CanonicalElement fp_scale(cplx s, const CanonicalElement& x);
CanonicalElement fp_mul(const SiteAlgebra& alg, const CanonicalElement& x,
                        const CanonicalElement& y);
CanonicalElement fp_adjoint(const SiteAlgebra& alg, const CanonicalElement& x);
CanonicalElement fp_permute(const Permutation& g, const CanonicalElement& x);

// Quotient onto the unital free product: each letter splits as
// alpha*1 + (a - alpha*1) and dropped units re-merge their neighbours.
CanonicalElement fp_quotient(const SiteAlgebra& alg, const CanonicalElement& x);

// Concrete stochastic process: a unital *-homomorphism per site plus a cyclic
// unit vector on a common space.
struct ProcessRep {
    int space_dim = 0;
    // per site, images of the k^2 basis elements (label l -> images[l-1])
    std::map<int, std::vector<CMat>> site_maps;
    std::vector<cplx> cyclic_vector;
};

// Validates the homomorphism property of each site map and the unit norm of
// the cyclic vector.
void validate_rep(const SiteAlgebra& alg, const ProcessRep& rep, double tol = 1e-10);

// Operator image of x in the representation.
CMat fp_operator(const CanonicalElement& x, const ProcessRep& rep);

// <pi(x) Omega, Omega>.
cplx fp_eval(const CanonicalElement& x, const ProcessRep& rep);

// JSON wire format; round-trips bit-exactly.
std::string fp_to_json(const CanonicalElement& x);
CanonicalElement fp_from_json(const std::string& text);

} // namespace qexch

#endif
