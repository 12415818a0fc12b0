#include "qexch/cmat.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qexch {

namespace {

Eigen::MatrixXcd to_eigen(const CMat& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    return m;
}

} // namespace

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat& CMat::operator+=(const CMat& o) {
    if (!same_shape(o)) throw rejected_input("CMat: shape mismatch in +=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (!same_shape(o)) throw rejected_input("CMat: shape mismatch in -=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMat mul_serial(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw rejected_input("mul: inner dimensions differ");
    CMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMat mul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw rejected_input("mul: inner dimensions differ");
    CMat c(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMat adjoint(const CMat& a) {
    CMat c(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

double frob_norm(const CMat& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (!a.same_shape(b)) throw rejected_input("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double hermitian_min_eig(const CMat& a, double tol) {
    if (a.rows() != a.cols()) throw rejected_input("hermitian_min_eig: matrix not square");
    double dev = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
    if (dev > tol) throw rejected_input("hermitian_min_eig: matrix not Hermitian within tol");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double op_norm(const CMat& a) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

int mat_rank(const CMat& a, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

cplx vdot(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    if (x.size() != y.size()) throw rejected_input("vdot: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

std::vector<cplx> apply(const CMat& a, const std::vector<cplx>& x) {
    if (static_cast<std::size_t>(a.cols()) != x.size())
        throw rejected_input("apply: dimension mismatch");
    std::vector<cplx> y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

} // namespace qexch
