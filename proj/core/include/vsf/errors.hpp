#pragma once

#include <stdexcept>

namespace vsf {

/// Invalid caller input: bad limits, non-positive tolerances, unknown names.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or integral did not reach its target within the work budget.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two evaluation routes that must agree did not (bad closed form, broken
/// identity, or a bug).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vsf
