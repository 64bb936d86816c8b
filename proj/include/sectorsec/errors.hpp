#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sectorsec {

// Raised when a scenario/sweep configuration fails validation. Carries the list
// of offending fields so front ends can report all problems at once.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::string message, std::vector<std::string> fields = {})
      : std::runtime_error(std::move(message)), fields_(std::move(fields)) {}

  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

// Raised when a numeric routine cannot meet its accuracy contract (quadrature
// non-convergence, non-finite intermediate values).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sectorsec
