#pragma once

#include <stdexcept>
#include <string>

namespace ctl {

/// Input outside the mathematical domain of an operation (p not in (0,1),
/// non-monotone input to a monotone-only analysis, constant function where a
/// root is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The request is well-formed but too large for the exact path.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed text input (function spec strings, BFT1 files, rational literals).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ctl
