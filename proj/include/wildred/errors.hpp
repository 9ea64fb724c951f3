#ifndef WILDRED_ERRORS_HPP
#define WILDRED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wildred {

/// Input/configuration problems (bad documents, mismatched sizes, malformed
/// rationals). CLI exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requests outside the supported scope (unsupported Cartan types, pole
/// orders, unbalanced filtrations). CLI exit code 3.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal invariant violations: identities that are theorems of the
/// implemented constructions failed to hold. Always a bug trap. CLI exit
/// code 4.
class invariant_violation : public std::logic_error {
public:
    explicit invariant_violation(const std::string& msg) : std::logic_error(msg) {}
};

/// Signals that a point lies outside a (Zariski-open) chart or cell; callers
/// typically retry with another Weyl translate. Not a failure by itself.
class chart_miss : public std::runtime_error {
public:
    explicit chart_miss(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw validation_error(msg);
}

inline void ensure_invariant(bool cond, const std::string& msg) {
    if (!cond) throw invariant_violation(msg);
}

} // namespace wildred

#endif
