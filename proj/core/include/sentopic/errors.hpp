#pragma once

#include <stdexcept>
#include <string>

namespace sentopic {

// Malformed or inconsistent input data (bad file, impossible corpus, ...).
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during a computation (non-finite parameters, enumeration
// bound exceeded, ...). The CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sentopic
