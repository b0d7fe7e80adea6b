#pragma once

#include <stdexcept>
#include <string>

namespace dqk {

/// Raised when an operation's mathematical precondition does not hold
/// (singular input, violated invariant, undefined projection, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the text/JSON readers on malformed input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dqk
