#pragma once

#include <stdexcept>
#include <string>

namespace lempert {

/// Invalid user input: a point outside its domain, a malformed pole set,
/// an out-of-range parameter. Maps to CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its target (no bracket, tail bound
/// not reachable, ...). Maps to CLI exit code 1.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lempert
