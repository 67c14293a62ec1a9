#pragma once

#include <stdexcept>
#include <string>

namespace bgconj {

/// Malformed textual input (words, power sums).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's precondition does not hold for the given arguments.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A value would exceed one of the materialization guards. The message
/// carries a symbolic description of what was being built.
class TooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace bgconj
