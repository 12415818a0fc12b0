#ifndef QEXCH_SUITES_HPP
#define QEXCH_SUITES_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace qexch {

// Exit-status contract shared by the library and the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct SuiteConfig {
    std::string suite = "all"; // freeprod|qfock|car|boolean|haagerup|all
    std::vector<double> q{0.5};
    std::vector<double> lambda{1.0}; // +inf encodes the tracial state
    int sites = 2;                   // d
    int degree = 3;                  // N
    int modes = 3;                   // n
    int perm_max = 7;
    std::uint64_t seed = 12345;
    double tol = 1e-10;
    std::string format = "json"; // json|csv|text
    std::string out;             // empty = stdout
};

// Throws rejected_input with a usage message on invalid configuration.
void validate_config(const SuiteConfig& cfg);

// Runs the named suite(s); returns one JSON object per executed suite.
nlohmann::json run_checks(const SuiteConfig& cfg);

// Renders results in the requested format.
std::string emit_report(const nlohmann::json& results, const std::string& format);

// Full driver: validate, run, render, write. Returns the exit status; the
// rendered report is also stored in *rendered when non-null.
int run_suite(const SuiteConfig& cfg, std::string* rendered = nullptr);

} // namespace qexch

#endif
