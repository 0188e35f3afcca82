#pragma once

#include <stdexcept>
#include <string>

namespace clab {

// Bad or inconsistent parameters: composite p, modulus/variant mismatch,
// missing claim parameters, unknown identifiers.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A request exceeds the row limit of a memoized triangle.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace clab
