#include "qexch/qfock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qexch {

MonomialBasis::MonomialBasis(int d, int N) : d_(d), N_(N) {
    if (d < 1) throw rejected_input("MonomialBasis: d must be positive");
    if (N < 0 || N > 8) throw rejected_input("MonomialBasis: degree cap must be in [0,8]");
    offsets_.push_back(0);
    tuples_.push_back({}); // vacuum
    for (int n = 1; n <= N; ++n) {
        offsets_.push_back(static_cast<int>(tuples_.size()));
        std::vector<int> t(n, 1);
        while (true) {
            tuples_.push_back(t);
            int k = n - 1;
            while (k >= 0 && t[k] == d) t[k--] = 1;
            if (k < 0) break;
            ++t[k];
        }
    }
    offsets_.push_back(static_cast<int>(tuples_.size()));
}

int MonomialBasis::degree_size(int n) const { return offsets_[n + 1] - offsets_[n]; }

int MonomialBasis::index_of(const std::vector<int>& tuple) const {
    const int n = static_cast<int>(tuple.size());
    if (n > N_) throw rejected_input("MonomialBasis: tuple degree above cap");
    int pos = 0; // tuples at fixed degree are base-d digits
    for (int v : tuple) {
        if (v < 1 || v > d_) throw rejected_input("MonomialBasis: mode index out of range");
        pos = pos * d_ + (v - 1);
    }
    return offsets_[n] + pos;
}

int inversions(const std::vector<int>& images) {
    const int n = static_cast<int>(images.size());
    int count = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (images[a] > images[b]) ++count;
    return count;
}

cplx q_inner(const std::vector<int>& u, const std::vector<int>& v, double q) {
    if (u.size() != v.size()) return 0.0; // delta_{n,m}
    const int n = static_cast<int>(u.size());
    if (n == 0) return 1.0;
    if (n > 8) throw rejected_input("q_inner: degree above enumeration limit");
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    double sum = 0.0;
    do {
        bool match = true;
        for (int k = 0; k < n && match; ++k)
            if (u[k] != v[img[k] - 1]) match = false;
        if (match) sum += std::pow(q, inversions(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return sum;
}

CMat gram_reference(const MonomialBasis& basis, double q) {
    const int dim = basis.size();
    CMat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = q_inner(basis.tuple(i), basis.tuple(j), q);
    return g;
}

QSpace::QSpace(int d, int N, double q) : basis_(d, N), q_(q), gram_(basis_.size(), basis_.size()) {
    if (!(q > -1.0 && q < 1.0)) throw rejected_input("QSpace: q must lie in (-1,1)");
    const int dim = basis_.size();
    // block diagonal by degree; entries are independent write-once targets
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < dim; ++i) {
        const std::vector<int>& u = basis_.tuple(i);
        const int n = static_cast<int>(u.size());
        const int lo = basis_.degree_offset(n);
        const int hi = lo + basis_.degree_size(n);
        for (int j = lo; j < hi; ++j) gram_(i, j) = q_inner(u, basis_.tuple(j), q_);
    }
}

CMat QSpace::gram_block(int degree) const {
    if (degree < 0 || degree > basis_.degree_cap())
        throw rejected_input("gram_block: degree out of range");
    const int lo = basis_.degree_offset(degree);
    const int sz = basis_.degree_size(degree);
    CMat g(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) g(i, j) = gram_(lo + i, lo + j);
    return g;
}

cplx QSpace::metric_dot(const std::vector<cplx>& x, const std::vector<cplx>& y) const {
    if (x.size() != y.size() || static_cast<int>(x.size()) != basis_.size())
        throw rejected_input("metric_dot: dimension mismatch");
    cplx s = 0.0;
    for (int i = 0; i < basis_.size(); ++i) {
        if (x[i] == cplx(0.0)) continue;
        for (int j = 0; j < basis_.size(); ++j) s += x[i] * std::conj(y[j]) * gram_(i, j);
    }
    return s;
}

LadderOps ladder_ops(const QSpace& space, const std::vector<cplx>& f) {
    const MonomialBasis& basis = space.basis();
    if (static_cast<int>(f.size()) != basis.d())
        throw rejected_input("ladder_ops: f has wrong dimension");
    const int dim = basis.size();
    const double q = space.q();
    LadderOps ops{CMat(dim, dim), CMat(dim, dim), CMat(dim, dim)};
    for (int col = 0; col < dim; ++col) {
        const std::vector<int>& t = basis.tuple(col);
        const int n = static_cast<int>(t.size());
        // creator: prepend a mode; images above the cap are dropped
        if (n < basis.degree_cap()) {
            for (int i = 1; i <= basis.d(); ++i) {
                if (f[i - 1] == cplx(0.0)) continue;
                std::vector<int> up(t.size() + 1);
                up[0] = i;
                std::copy(t.begin(), t.end(), up.begin() + 1);
                ops.creator(basis.index_of(up), col) += f[i - 1];
            }
        }
        // annihilator: remove the k-th slot with weight q^{k-1} <e_{t_k}, f>
        double qk = 1.0;
        for (int k = 0; k < n; ++k) {
            std::vector<int> down;
            down.reserve(n - 1);
            for (int m = 0; m < n; ++m)
                if (m != k) down.push_back(t[m]);
            ops.annihilator(basis.index_of(down), col) += qk * std::conj(f[t[k] - 1]);
            qk *= q;
        }
    }
    ops.field = ops.creator + ops.annihilator;
    return ops;
}

cplx vacuum_moment(const QSpace& space, const std::vector<CMat>& word) {
    const int dim = space.basis().size();
    std::vector<cplx> x(dim, 0.0);
    x[0] = 1.0; // vacuum
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->rows() != dim || it->cols() != dim)
            throw rejected_input("vacuum_moment: operator dimension mismatch");
        x = qexch::apply(*it, x);
    }
    std::vector<cplx> vac(dim, 0.0);
    vac[0] = 1.0;
    return space.metric_dot(x, vac);
}

double commutation_residual(const QSpace& space, const std::vector<cplx>& f,
                            const std::vector<cplx>& g) {
    const MonomialBasis& basis = space.basis();
    const LadderOps of = ladder_ops(space, f);
    const LadderOps og = ladder_ops(space, g);
    cplx gf = 0.0;
    for (int i = 0; i < basis.d(); ++i) gf += g[i] * std::conj(f[i]);
    CMat rel = mul(of.annihilator, og.creator) -
               cplx(space.q()) * mul(og.creator, of.annihilator);
    const int cut = basis.degree_offset(basis.degree_cap()); // first top-degree index
    double s = 0.0;
    for (int i = 0; i < cut; ++i)
        for (int j = 0; j < cut; ++j) {
            cplx e = rel(i, j) - (i == j ? gf : cplx(0.0));
            s += std::norm(e);
        }
    return std::sqrt(s);
}

double adjointness_residual(const QSpace& space, const std::vector<cplx>& f) {
    const MonomialBasis& basis = space.basis();
    const LadderOps ops = ladder_ops(space, f);
    const int dim = basis.size();
    const int cut = basis.degree_offset(basis.degree_cap());
    double worst = 0.0;
    for (int u = 0; u < cut; ++u)
        for (int v = 0; v < cut; ++v) {
            std::vector<cplx> eu(dim, 0.0), ev(dim, 0.0);
            eu[u] = 1.0;
            ev[v] = 1.0;
            const cplx lhs = space.metric_dot(qexch::apply(ops.creator, eu), ev);
            const cplx rhs = space.metric_dot(eu, qexch::apply(ops.annihilator, ev));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

} // namespace qexch
