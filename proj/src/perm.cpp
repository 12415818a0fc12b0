#include "qexch/perm.hpp"

#include <algorithm>
#include <numeric>

namespace qexch {

Permutation::Permutation(std::map<int, int> mapping) : map_(std::move(mapping)) {
    // prune fixed points, then verify bijectivity on the support
    for (auto it = map_.begin(); it != map_.end();) {
        if (it->first == it->second)
            it = map_.erase(it);
        else
            ++it;
    }
    std::map<int, int> inv;
    for (const auto& [k, v] : map_) {
        if (!map_.count(v))
            throw rejected_input("Permutation: image outside support");
        if (!inv.emplace(v, k).second)
            throw rejected_input("Permutation: mapping not injective");
    }
}

Permutation Permutation::transposition(int i, int j) {
    if (i == j) return Permutation();
    return Permutation({{i, j}, {j, i}});
}

Permutation Permutation::from_images(const std::vector<int>& points,
                                     const std::vector<int>& images) {
    if (points.size() != images.size())
        throw rejected_input("Permutation: points/images length mismatch");
    std::map<int, int> m;
    for (std::size_t k = 0; k < points.size(); ++k) m[points[k]] = images[k];
    return Permutation(std::move(m));
}

int Permutation::operator()(int i) const {
    auto it = map_.find(i);
    return it == map_.end() ? i : it->second;
}

Permutation Permutation::inverse() const {
    std::map<int, int> inv;
    for (const auto& [k, v] : map_) inv[v] = k;
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
    std::map<int, int> m;
    for (const auto& [k, v] : other.map_) m[k] = (*this)(v);
    for (const auto& [k, v] : map_)
        if (!m.count(k)) m[k] = v;
    return Permutation(std::move(m));
}

std::vector<int> Permutation::support() const {
    std::vector<int> s;
    s.reserve(map_.size());
    for (const auto& [k, v] : map_) s.push_back(k);
    return s;
}

std::vector<Permutation> enumerate_perms(const std::vector<int>& I) {
    if (static_cast<int>(I.size()) > kPermEnumLimit)
        throw resource_limit("enumerate_perms: |I| exceeds the factorial guard");
    std::vector<int> pts = I;
    std::sort(pts.begin(), pts.end());
    std::vector<int> img = pts;
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images(pts, img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

std::complex<double> cesaro_mean(
    const std::function<std::complex<double>(const Permutation&)>& f,
    const std::vector<int>& I) {
    const std::vector<Permutation> perms = enumerate_perms(I);
    const int n = static_cast<int>(perms.size());
    const int chunk = 1024;
    const int nchunks = (n + chunk - 1) / chunk;
    std::vector<std::complex<double>> partial(nchunks, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nchunks; ++c) {
        std::complex<double> s = 0.0;
        const int hi = std::min(n, (c + 1) * chunk);
        for (int k = c * chunk; k < hi; ++k) s += f(perms[k]);
        partial[c] = s;
    }
    std::complex<double> total = 0.0;
    for (const auto& s : partial) total += s; // fixed chunk order
    return total / static_cast<double>(n);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw rejected_input("Rational: zero denominator");
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Rational{num / g, den / g};
}

Rational disjoint_fraction(int n, int s, int t, bool* feasible) {
    if (n <= 0) throw rejected_input("disjoint_fraction: index set must be nonempty");
    if (s < 0 || t < 0) throw rejected_input("disjoint_fraction: negative subset size");
    if (s > n || t > n)
        throw rejected_input("disjoint_fraction: subset larger than the index set");
    if (feasible) *feasible = true;
    if (t == 0 || s == 0) return Rational{1, 1};
    if (s + t > n) {
        // t images cannot all avoid s points when fewer than t targets remain
        if (t > n - s) {
            if (feasible) *feasible = false;
            return Rational{0, 1};
        }
    }
    // favorable: place the t images injectively in I \ S, then the remaining
    // n - t points arbitrarily: P(n-s, t) * (n-t)!; total n!.
    // fraction = P(n-s,t) / P(n,t)
    std::int64_t num = 1, den = 1;
    for (int k = 0; k < t; ++k) {
        if (__builtin_mul_overflow(num, n - s - k, &num) ||
            __builtin_mul_overflow(den, n - k, &den))
            throw resource_limit("disjoint_fraction: exact count overflows 64 bits");
    }
    return make_rational(num, den);
}

} // namespace qexch
