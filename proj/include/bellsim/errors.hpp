#pragma once

#include <stdexcept>
#include <string>

namespace bellsim {

// Domain validation failure (POVM axioms, insufficient data, ...).
// The CLI maps this to exit code 2; plain std::invalid_argument /
// std::runtime_error map to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bellsim
