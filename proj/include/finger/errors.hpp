// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_ERRORS_HPP
#define FINGER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace finger {

/// Malformed input text (bad token, wrong count). Carries a 1-based line number
/// when the failing line is known.
class format_error : public std::runtime_error {
public:
    format_error(std::string msg, long line = -1)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Input parsed but violates a domain invariant (bad norm, negative mass, ...).
class validation_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain.
class domain_error : public std::domain_error {
    using std::domain_error::domain_error;
};

/// A truncated sum or quadrature failed its convergence check.
class convergence_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A derived quantity contradicts another route to the same quantity.
class consistency_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace finger

#endif
