#pragma once

#include <stdexcept>
#include <string>

namespace cbath {

// Malformed user-facing configuration (CLI maps this to exit code 2).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A numerical guard tripped: norm drift, eigenvalue branch loss, residue
// assertions (CLI maps this to exit code 3).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace cbath
