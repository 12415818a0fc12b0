#ifndef QEXCH_CMAT_HPP
#define QEXCH_CMAT_HPP

#include <complex>
#include <vector>

#include "qexch/errors.hpp"

namespace qexch {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Value semantics throughout; every space in
// this toolkit is at most a few thousand dimensions.
class CMat {
public:
    CMat() : rows_(0), cols_(0) {}
    CMat(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0)
            throw rejected_input("CMat: dimensions must be positive");
    }

    static CMat identity(int n);
    static CMat zero(int rows, int cols) { return CMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    bool same_shape(const CMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx s);

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

// Matrix product, OpenMP-parallel over output rows.
CMat mul(const CMat& a, const CMat& b);
// Serial reference kept for testing and benchmarks.
CMat mul_serial(const CMat& a, const CMat& b);

// Conjugate transpose.
CMat adjoint(const CMat& a);

// Kronecker product (used by the CAR and product-state code).
CMat kron(const CMat& a, const CMat& b);

// sqrt of the sum of squared moduli.
double frob_norm(const CMat& a);

// Largest |entry| of a - b; matrices must share shape.
double max_abs_diff(const CMat& a, const CMat& b);

// Smallest eigenvalue of a Hermitian matrix. Rejects matrices that are not
// Hermitian within tol in max-entry norm.
double hermitian_min_eig(const CMat& a, double tol = 1e-10);

// Largest singular value (operator norm).
double op_norm(const CMat& a);

// Rank of the matrix with singular values above tol.
int mat_rank(const CMat& a, double tol = 1e-10);

// x^T conj(y) for equal-length coordinate vectors: <x, y> linear in the
// first argument, the convention used everywhere in this toolkit.
cplx vdot(const std::vector<cplx>& x, const std::vector<cplx>& y);

// y = a * x.
std::vector<cplx> apply(const CMat& a, const std::vector<cplx>& x);

} // namespace qexch

#endif
