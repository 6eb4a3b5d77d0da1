#ifndef RCDS_ERRORS_HPP
#define RCDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcds {

// Malformed input text (edge lists, decomposition files, JSON payloads).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a documented precondition (unknown vertex, disconnected
// graph where connectivity is assumed, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Structured data failed validation (bad decomposition, bad embedding).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant broke; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

#define RCDS_REQUIRE(cond, msg)                                                \
    do {                                                                       \
        if (!(cond)) throw ::rcds::internal_error(msg);                        \
    } while (0)

} // namespace rcds

#endif
