#ifndef QEXCH_RNG_HPP
#define QEXCH_RNG_HPP

#include <cstdint>
#include <vector>

#include "qexch/cmat.hpp"

namespace qexch {

// Counter-based generator: value (seed, counter) -> u64. Sharded and serial
// runs of a suite draw identical streams because draws are addressed, not
// sequential.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed ^ (stream * 0xda942042e4dd58b5ULL)) {}

    double uniform() { return static_cast<double>(mix64(seed_, counter_++) >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(mix64(seed_, counter_++) % static_cast<std::uint64_t>(hi - lo + 1));
    }
    cplx complex_unit_box() { return cplx(uniform(-1, 1), uniform(-1, 1)); }

    std::vector<cplx> complex_vector(int n) {
        std::vector<cplx> v(n);
        for (auto& x : v) x = complex_unit_box();
        return v;
    }

    std::vector<cplx> unit_vector(int n) {
        std::vector<cplx> v = complex_vector(n);
        double s = 0.0;
        for (const auto& x : v) s += std::norm(x);
        s = std::sqrt(s);
        for (auto& x : v) x /= s;
        return v;
    }

    CMat matrix(int rows, int cols) {
        CMat m(rows, cols);
        for (auto& x : m.data()) x = complex_unit_box();
        return m;
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace qexch

#endif
