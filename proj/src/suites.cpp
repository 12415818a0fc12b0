#include "qexch/suites.hpp"

#include "qexch/boolfock.hpp"
#include "qexch/car.hpp"
#include "qexch/freeprod.hpp"
#include "qexch/haagerup.hpp"
#include "qexch/qfock.hpp"
#include "qexch/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace qexch {

namespace {

using nlohmann::json;

void add_check(json& suite, const std::string& name, double gap, double tol) {
    suite["checks"].push_back({{"name", name}, {"gap", gap}, {"tol", tol}, {"pass", gap <= tol}});
}

void add_check_flag(json& suite, const std::string& name, bool pass) {
    suite["checks"].push_back({{"name", name}, {"pass", pass}});
}

// --- freeprod fuzz helpers -------------------------------------------------

CanonicalElement random_element(CounterRng& rng, const SiteAlgebra& alg, Mode mode,
                                int max_sites, int max_len) {
    CanonicalElement x = fp_zero(mode);
    const int nterms = rng.uniform_int(1, 3);
    for (int t = 0; t < nterms; ++t) {
        const int len = rng.uniform_int(mode == Mode::Unital ? 0 : 1, max_len);
        BasisWord w;
        int prev_site = -1;
        for (int i = 0; i < len; ++i) {
            int site = rng.uniform_int(1, max_sites);
            while (site == prev_site) site = rng.uniform_int(1, max_sites);
            const int lo = (mode == Mode::Unital) ? 2 : 1;
            w.push_back(Letter{site, rng.uniform_int(lo, alg.basis_size())});
            prev_site = site;
        }
        CanonicalElement term = w.empty() ? fp_scale(rng.complex_unit_box(), fp_one())
                                          : fp_word(mode, w, rng.complex_unit_box());
        x = fp_add(x, term);
    }
    return x;
}

CMat random_unitary(CounterRng& rng, int n) {
    // Gram-Schmidt on random columns
    CMat m = rng.matrix(n, n);
    for (int c = 0; c < n; ++c) {
        for (int p = 0; p < c; ++p) {
            cplx proj = 0.0;
            for (int r = 0; r < n; ++r) proj += m(r, c) * std::conj(m(r, p));
            for (int r = 0; r < n; ++r) m(r, c) -= proj * m(r, p);
        }
        double nrm = 0.0;
        for (int r = 0; r < n; ++r) nrm += std::norm(m(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < n; ++r) m(r, c) /= nrm;
    }
    return m;
}

ProcessRep random_rep(CounterRng& rng, const SiteAlgebra& alg, int max_sites) {
    ProcessRep rep;
    rep.space_dim = alg.dim();
    rep.cyclic_vector = rng.unit_vector(alg.dim());
    for (int s = 1; s <= max_sites; ++s) {
        const CMat U = random_unitary(rng, alg.dim());
        const CMat Ud = adjoint(U);
        std::vector<CMat> imgs;
        for (int l = 1; l <= alg.basis_size(); ++l)
            imgs.push_back(mul(mul(U, alg.basis(l)), Ud));
        rep.site_maps[s] = std::move(imgs);
    }
    return rep;
}

// --- suites ----------------------------------------------------------------

json suite_freeprod(const SuiteConfig& cfg) {
    json s;
    s["suite"] = "freeprod";
    s["checks"] = json::array();
    const SiteAlgebra alg = SiteAlgebra::pauli();
    const int cases = 200;
    double assoc_gap = 0.0, adj_gap = 0.0, quot_gap = 0.0, ekv_gap = 0.0;
    double eval_gap = 0.0;

    std::vector<ProcessRep> reps;
    for (int r = 0; r < 3; ++r) {
        CounterRng rng(cfg.seed, 900 + r);
        reps.push_back(random_rep(rng, alg, 4));
    }
    for (int c = 0; c < cases; ++c) {
        CounterRng rng(cfg.seed, c);
        const Mode mode = (c % 2 == 0) ? Mode::NonUnital : Mode::Unital;
        const CanonicalElement x = random_element(rng, alg, mode, 4, 3);
        const CanonicalElement y = random_element(rng, alg, mode, 4, 3);
        const CanonicalElement z = random_element(rng, alg, mode, 4, 3);
        assoc_gap = std::max(assoc_gap, fp_distance(fp_mul(alg, fp_mul(alg, x, y), z),
                                                    fp_mul(alg, x, fp_mul(alg, y, z))));
        adj_gap = std::max(adj_gap,
                           fp_distance(fp_adjoint(alg, fp_mul(alg, x, y)),
                                       fp_mul(alg, fp_adjoint(alg, y), fp_adjoint(alg, x))));
        const Permutation g = Permutation::transposition(rng.uniform_int(1, 4),
                                                         rng.uniform_int(1, 4));
        if (mode == Mode::NonUnital) {
            quot_gap = std::max(quot_gap,
                                fp_distance(fp_quotient(alg, fp_mul(alg, x, y)),
                                            fp_mul(alg, fp_quotient(alg, x),
                                                   fp_quotient(alg, y))));
            ekv_gap = std::max(ekv_gap, fp_distance(fp_quotient(alg, fp_permute(g, x)),
                                                    fp_permute(g, fp_quotient(alg, x))));
            const ProcessRep& rep = reps[c % reps.size()];
            const cplx lhs = fp_eval(fp_mul(alg, x, y), rep);
            const CMat prod = mul(fp_operator(x, rep), fp_operator(y, rep));
            const cplx rhs = vdot(qexch::apply(prod, rep.cyclic_vector), rep.cyclic_vector);
            eval_gap = std::max(eval_gap, std::abs(lhs - rhs));
        }
    }
    s["cases"] = cases;
    add_check(s, "fp_mul associativity (coefficient gap)", assoc_gap, cfg.tol);
    add_check(s, "fp_adjoint antihomomorphism (coefficient gap)", adj_gap, cfg.tol);
    add_check(s, "fp_quotient homomorphism (coefficient gap)", quot_gap, cfg.tol);
    add_check(s, "quotient/permutation equivariance (coefficient gap)", ekv_gap, cfg.tol);
    add_check(s, "fp_eval multiplicativity", eval_gap, cfg.tol);
    s["eval_gap"] = eval_gap;
    return s;
}

json suite_qfock(const SuiteConfig& cfg) {
    json out = json::array();
    for (double q : cfg.q) {
        json s;
        s["suite"] = "qfock";
        s["checks"] = json::array();
        s["d"] = cfg.sites;
        s["N"] = cfg.degree;
        s["q"] = q;
        const QSpace space(cfg.sites, cfg.degree, q);
        json eigs = json::array();
        double min_eig = 1e300;
        for (int n = 0; n <= cfg.degree; ++n) {
            const double e = hermitian_min_eig(space.gram_block(n));
            eigs.push_back(e);
            min_eig = std::min(min_eig, e);
        }
        s["gram_min_eig"] = eigs;
        add_check_flag(s, "gram positive definite", min_eig > 0.0);
        CounterRng rng(cfg.seed, 0);
        double comm = 0.0, adjres = 0.0;
        for (int c = 0; c < 5; ++c) {
            const auto f = rng.complex_vector(cfg.sites);
            const auto g = rng.complex_vector(cfg.sites);
            comm = std::max(comm, commutation_residual(space, f, g));
            adjres = std::max(adjres, adjointness_residual(space, f));
        }
        s["commutation_residual"] = comm;
        s["adjointness_residual"] = adjres;
        add_check(s, "q-commutation relation", comm, cfg.tol);
        add_check(s, "creator/annihilator metric adjointness", adjres, cfg.tol);
        out.push_back(std::move(s));
    }
    return out;
}

json suite_car(const SuiteConfig& cfg) {
    json s;
    s["suite"] = "car";
    s["checks"] = json::array();
    const int n = cfg.modes;
    s["n"] = n;
    const CarSystem sys = jw_generators(n);
    const double car_res = car_relations_residual(sys);
    s["car_residual"] = car_res;
    add_check(s, "CAR anticommutation relations", car_res, 1e-12);
    double parity = 0.0;
    for (int j = 0; j < n; ++j) {
        const CMat conj = mul(mul(sys.parity_unitary, sys.a[j]), sys.parity_unitary);
        parity = std::max(parity, max_abs_diff(conj, cplx(-1.0) * sys.a[j]));
    }
    s["parity_residual"] = parity;
    add_check(s, "parity conjugation sends a_j to -a_j", parity, 1e-12);

    // even product state: transposition-invariance scan on a^#_i a^#_j monomials
    SiteState even{CMat(2, 2)};
    even.rho(0, 0) = 0.7;
    even.rho(1, 1) = 0.3;
    const CarState st = product_state(even, n);
    json ev = json::array();
    double worst = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int bi = 0; bi < 2; ++bi)
                for (int bj = 0; bj < 2; ++bj) {
                    const CMat m = mul(bi ? adjoint(sys.a[i - 1]) : sys.a[i - 1],
                                       bj ? adjoint(sys.a[j - 1]) : sys.a[j - 1]);
                    for (int p = 1; p < n; ++p) {
                        const Permutation g = Permutation::transposition(p, p + 1);
                        const CarState stp = state_permute(st, sys, g);
                        worst = std::max(worst, std::abs(car_expect(stp, m) - car_expect(st, m)));
                    }
                }
        }
    ev.push_back({{"name", "even product state transposition scan"}, {"max_gap", worst}});
    s["evenness_tests"] = ev;
    add_check(s, "even product state is transposition invariant", worst, cfg.tol);

    // mixture of even product states factorizes across sites 1 and 2
    SiteState rho2{CMat(2, 2)};
    rho2.rho(0, 0) = 0.4;
    rho2.rho(1, 1) = 0.6;
    const double w1 = 0.25, w2 = 0.75;
    CarState mix{w1 * product_state(even, n).density + w2 * product_state(rho2, n).density};
    const CMat A = mul(adjoint(sys.a[0]), sys.a[0]);
    const CMat B = mul(adjoint(sys.a[1]), sys.a[1]);
    const cplx lhs = car_expect(mix, mul(A, B));
    const cplx psi1 = even.rho(1, 1), psi2 = rho2.rho(1, 1); // <a^dag a> per site
    const cplx rhs = w1 * psi1 * psi1 + w2 * psi2 * psi2;
    const double gap = std::abs(lhs - rhs);
    s["definetti_mixture_gap"] = gap;
    add_check(s, "mixture of product states factorizes per component", gap, cfg.tol);
    return s;
}

json suite_boolean(const SuiteConfig& cfg) {
    json s;
    s["suite"] = "boolean";
    s["checks"] = json::array();
    const int d = std::max(cfg.sites, 2);
    s["d"] = d;
    const BooleanSpace space{d};
    const BooleanOps ops = boolean_ops(space);
    const auto units = matrix_units(space, ops);

    double rel = 0.0;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            CMat expect = units.at({i, j});
            if (i == j) expect += units.at({0, 0});
            rel = std::max(rel, max_abs_diff(mul(ops.r[i - 1], ops.r[j - 1]), expect));
        }
    s["relation_residuals"] = rel;
    add_check(s, "r_i r_j = delta_ij e_## + e_ij (exact)", rel, 0.0);

    CMat stacked(static_cast<int>(units.size()), space.dim() * space.dim());
    int row = 0;
    for (const auto& [key, m] : units) {
        for (int i = 0; i < space.dim(); ++i)
            for (int j = 0; j < space.dim(); ++j) stacked(row, i * space.dim() + j) = m(i, j);
        ++row;
    }
    const int rank = mat_rank(stacked);
    s["span_rank"] = rank;
    add_check_flag(s, "matrix units span M_{d+1}", rank == space.dim() * space.dim());

    json cases = json::array();
    double worst = 0.0;
    CMat site_state(d, d);
    for (int i = 0; i < d; ++i) site_state(i, i) = 1.0 / d;
    for (int c = 0; c < 10; ++c) {
        CounterRng rng(cfg.seed, 100 + c);
        std::vector<cplx> xi = rng.unit_vector(space.dim());
        const double want = rng.uniform(0.15, 0.85);
        // rescale the vacuum coordinate to the wanted overlap
        double rest = 0.0;
        for (int i = 1; i <= d; ++i) rest += std::norm(xi[i]);
        xi[0] = std::sqrt(want) * (xi[0] == cplx(0.0) ? 1.0 : xi[0] / std::abs(xi[0]));
        const double scale = std::sqrt((1.0 - want) / rest);
        for (int i = 1; i <= d; ++i) xi[i] *= scale;
        const ObstructionReport rep = ce_obstruction(space, xi, site_state);
        const double gap = std::abs(rep.ratio - rep.overlap_sq);
        worst = std::max(worst, gap);
        cases.push_back({{"overlap_sq", rep.overlap_sq}, {"ratio", rep.ratio}, {"gap", gap}});
    }
    s["obstruction_cases"] = cases;
    add_check(s, "conditional-expectation obstruction ratio", worst, 1e-12);
    return s;
}

json suite_haagerup(const SuiteConfig& cfg) {
    json out = json::array();
    for (double lv : cfg.lambda) {
        json s;
        s["suite"] = "haagerup";
        s["checks"] = json::array();
        s["lambda"] = std::isinf(lv) ? json("inf") : json(lv);
        const HaagerupState st{lv};
        const FreeWord counter = reduce_word({{1, 1}, {2, 1}, {1, -1}});
        const FreeWord gj = reduce_word({{2, 1}});
        if (!std::isinf(lv)) {
            const double lhs = haagerup_eval(st, counter);
            const double rhs = haagerup_eval(st, gj); // phi(g_j) phi(1)
            add_check_flag(s, "block-singleton counterexample e^-3l != e^-l",
                           std::abs(lhs - std::exp(-3.0 * lv)) < 1e-15 &&
                               std::abs(rhs - std::exp(-lv)) < 1e-15 && lhs != rhs);
        }
        const FreeWord v = reduce_word({{1, 1}});
        const FreeWord w = reduce_word({{2, -1}});
        const auto rows = cesaro_cluster(st, v, w, 2, cfg.perm_max);
        json table = json::array();
        double closed_gap = 0.0;
        bool bounded = true;
        for (const auto& r : rows) {
            table.push_back({{"n", r.n},
                             {"mean_re", r.mean.real()},
                             {"mean_im", r.mean.imag()},
                             {"target_re", r.target.real()},
                             {"target_im", r.target.imag()},
                             {"gap", r.gap},
                             {"bound", r.bound}});
            if (!std::isinf(lv)) {
                const double closed =
                    (1.0 + (r.n - 1) * std::exp(-2.0 * lv)) / static_cast<double>(r.n);
                closed_gap = std::max(closed_gap, std::abs(r.mean.real() - closed));
            }
            if (r.gap > r.bound + 1e-12) bounded = false;
        }
        s["cesaro"] = table;
        if (!std::isinf(lv))
            add_check(s, "cesaro mean matches closed form (1+(n-1)e^-2l)/n", closed_gap, 1e-12);
        add_check_flag(s, "cesaro gap within counting bound", bounded);
        if (!std::isinf(lv)) {
            const auto ball = word_ball(3, 2);
            const double min_eig = gram_psd_check(st, ball);
            s["gram"] = {{"lambda", lv}, {"ball_radius", 2}, {"generators", 3},
                         {"min_eig", min_eig}};
            add_check_flag(s, "Haagerup kernel PSD on word ball", min_eig >= -1e-10);
        }
        out.push_back(std::move(s));
    }
    return out;
}

bool all_pass(const json& results) {
    for (const auto& s : results)
        for (const auto& c : s.at("checks"))
            if (!c.at("pass").get<bool>()) return false;
    return true;
}

} // namespace

void validate_config(const SuiteConfig& cfg) {
    static const std::vector<std::string> suites{"freeprod", "qfock", "car",
                                                "boolean", "haagerup", "all"};
    if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end())
        throw rejected_input("unknown suite: " + cfg.suite);
    for (double q : cfg.q)
        if (!(q > -1.0 && q < 1.0)) throw rejected_input("q must lie in (-1,1)");
    for (double l : cfg.lambda)
        if (!(l > 0.0)) throw rejected_input("lambda must be positive (or inf)");
    if (cfg.perm_max > kPermEnumLimit) throw rejected_input("perm-max must be <= 10");
    if (cfg.perm_max < 2) throw rejected_input("perm-max must be >= 2");
    if (!(cfg.tol > 0.0)) throw rejected_input("tol must be positive");
    if (cfg.sites < 1) throw rejected_input("sites must be >= 1");
    if (cfg.degree < 1 || cfg.degree > 8) throw rejected_input("degree must be in [1,8]");
    if (cfg.modes < 1 || cfg.modes > kCarMaxPermModes)
        throw rejected_input("modes must be in [1,6]");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        throw rejected_input("format must be json, csv or text");
}

nlohmann::json run_checks(const SuiteConfig& cfg) {
#ifdef _OPENMP
    if (const char* env = std::getenv("QEXCH_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
#endif
    json results = json::array();
    auto want = [&](const std::string& name) { return cfg.suite == "all" || cfg.suite == name; };
    if (want("freeprod")) results.push_back(suite_freeprod(cfg));
    if (want("qfock"))
        for (auto& s : suite_qfock(cfg)) results.push_back(std::move(s));
    if (want("car")) results.push_back(suite_car(cfg));
    if (want("boolean")) results.push_back(suite_boolean(cfg));
    if (want("haagerup"))
        for (auto& s : suite_haagerup(cfg)) results.push_back(std::move(s));
    return results;
}

std::string emit_report(const nlohmann::json& results, const std::string& format) {
    if (format == "json") return results.dump(2) + "\n";
    std::ostringstream os;
    if (format == "csv") {
        os << "n,mean_re,mean_im,target_re,target_im,gap,bound\n";
        for (const auto& s : results) {
            if (!s.contains("cesaro")) continue;
            for (const auto& r : s.at("cesaro"))
                os << r.at("n").get<int>() << ',' << r.at("mean_re").get<double>() << ','
                   << r.at("mean_im").get<double>() << ',' << r.at("target_re").get<double>()
                   << ',' << r.at("target_im").get<double>() << ',' << r.at("gap").get<double>()
                   << ',' << r.at("bound").get<double>() << '\n';
        }
        return os.str();
    }
    for (const auto& s : results) {
        os << "suite " << s.at("suite").get<std::string>() << '\n';
        for (const auto& c : s.at("checks")) {
            os << (c.at("pass").get<bool>() ? "  [PASS] " : "  [FAIL] ")
               << c.at("name").get<std::string>();
            if (c.contains("gap")) os << "  gap=" << c.at("gap").get<double>();
            os << '\n';
        }
    }
    return os.str();
}

int run_suite(const SuiteConfig& cfg, std::string* rendered) {
    try {
        validate_config(cfg);
    } catch (const rejected_input& e) {
        if (rendered) *rendered = std::string("error: ") + e.what() + "\n";
        return kExitUsage;
    }
    const json results = run_checks(cfg);
    const std::string text = emit_report(results, cfg.format);
    if (rendered) *rendered = text;
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out);
        if (!f) return kExitIo;
        f << text;
        if (!f.good()) return kExitIo;
    }
    return all_pass(results) ? kExitPass : kExitCheckFailed;
}

} // namespace qexch
