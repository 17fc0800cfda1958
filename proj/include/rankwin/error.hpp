#pragma once

#include <stdexcept>
#include <string>

namespace rankwin {

// Malformed or inconsistent input data (bad CSV rows, invalid samples,
// vectors off the simplex). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configuration that no valid input can satisfy: model order deeper than
// the data, weights outside a bound's feasible set, k > n, ...
// The CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace rankwin
