#ifndef QEXCH_ERRORS_HPP
#define QEXCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qexch {

// Input violates an operation precondition.
struct rejected_input : std::invalid_argument {
    explicit rejected_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// Request exceeds a hard resource guard (factorial blow-up etc).
struct resource_limit : std::runtime_error {
    explicit resource_limit(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency check failed (should not happen on valid input).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace qexch

#endif
