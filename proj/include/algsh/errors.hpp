#ifndef ALGSH_ERRORS_HPP
#define ALGSH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace algsh {

// Input does not have the shape an operation requires (wrong arity, missing
// operation, alphabet mismatch).
struct type_error : std::runtime_error {
    explicit type_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented precondition of an operation is violated by the input.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource limit (carrier size, automaton states) was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two independent routes disagreed, or an invariant the analysis relies on failed.
// Signals a bug, not bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace algsh

#endif
