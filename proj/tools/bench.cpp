// Compares the OpenMP kernels against their serial references: dense matrix
// product, q-Gram assembly, and the permutation-averaged conditional
// expectation.
#include "qexch/car.hpp"
#include "qexch/cmat.hpp"
#include "qexch/qfock.hpp"
#include "qexch/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel kernels run serially\n");
#endif

    {
        qexch::CounterRng rng(7);
        const int n = 512;
        const qexch::CMat a = rng.matrix(n, n);
        const qexch::CMat b = rng.matrix(n, n);
        qexch::CMat c_par(n, n), c_ser(n, n);
        const double tp = time_ms([&] { c_par = qexch::mul(a, b); });
        const double ts = time_ms([&] { c_ser = qexch::mul_serial(a, b); });
        std::printf("matmul %dx%d        serial %8.2f ms  parallel %8.2f ms  maxdiff %.2e\n",
                    n, n, ts, tp, qexch::max_abs_diff(c_par, c_ser));
    }

    {
        const int d = 3, N = 5;
        const double q = 0.5;
        const qexch::MonomialBasis basis(d, N);
        qexch::CMat ref(basis.size(), basis.size());
        const double ts = time_ms([&] { ref = qexch::gram_reference(basis, q); }, 1);
        double tp = 0.0;
        qexch::CMat par(basis.size(), basis.size());
        tp = time_ms([&] { par = qexch::QSpace(d, N, q).gram(); }, 1);
        std::printf("q-gram d=%d N=%d      serial %8.2f ms  parallel %8.2f ms  maxdiff %.2e\n",
                    d, N, ts, tp, qexch::max_abs_diff(par, ref));
    }

    {
        const int n = 5;
        const qexch::CarSystem sys = qexch::jw_generators(n);
        qexch::CounterRng rng(11);
        const int D = 1 << n;
        qexch::CMat X = rng.matrix(D, D);
        qexch::CMat E(D, D);
        const double t = time_ms([&] { E = qexch::fixed_point_expectation(sys, X); }, 1);
        std::printf("CAR E_fix n=%d       total  %8.2f ms (includes intertwiner solves)\n", n, t);
    }
    return 0;
}
