#include <CLI11.hpp>

#include "qexch/suites.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"qexch: verification suites for exchangeable-process algebra"};

    qexch::SuiteConfig cfg;
    std::vector<std::string> lambda_raw{"1"};
    app.add_option("--suite", cfg.suite, "freeprod|qfock|car|boolean|haagerup|all")
        ->capture_default_str();
    app.add_option("--q", cfg.q, "q values in (-1,1)")->capture_default_str();
    app.add_option("--lambda", lambda_raw, "Haagerup lambda values (> 0, or 'inf')")
        ->capture_default_str();
    app.add_option("--sites", cfg.sites, "number of sites d")->capture_default_str();
    app.add_option("--degree", cfg.degree, "Fock truncation degree N")->capture_default_str();
    app.add_option("--modes", cfg.modes, "CAR modes n")->capture_default_str();
    app.add_option("--perm-max", cfg.perm_max, "largest |I| for Cesaro tables")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "fuzz seed")->capture_default_str();
    app.add_option("--tol", cfg.tol, "assertion tolerance")->capture_default_str();
    app.add_option("--format", cfg.format, "json|csv|text")->capture_default_str();
    app.add_option("--out", cfg.out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qexch::kExitUsage;
    }

    cfg.lambda.clear();
    for (const auto& tok : lambda_raw) {
        if (tok == "inf" || tok == "+inf") {
            cfg.lambda.push_back(std::numeric_limits<double>::infinity());
        } else {
            try {
                cfg.lambda.push_back(std::stod(tok));
            } catch (const std::exception&) {
                std::cerr << "error: bad lambda value '" << tok << "'\n";
                return qexch::kExitUsage;
            }
        }
    }

    std::string rendered;
    const int status = qexch::run_suite(cfg, &rendered);
    if (status == qexch::kExitUsage) {
        std::cerr << rendered;
        return status;
    }
    if (cfg.out.empty()) std::cout << rendered;
    if (status == qexch::kExitIo) std::cerr << "error: cannot write " << cfg.out << "\n";
    return status;
}
