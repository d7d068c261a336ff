#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

/// Malformed or out-of-domain input (bad parameters, dimension mismatch,
/// singular basis change, parity violation). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was applied outside its mathematical domain, e.g. Jordan
/// data of a non-nilpotent matrix.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A verification that is expected to hold did not.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was violated (e.g. a derivation that does not
/// preserve the lower central flag).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace leibniz
