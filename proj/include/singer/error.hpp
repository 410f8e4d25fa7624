// Common error type for the singer library.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace singer {

// Domain error with a stable machine-readable code ("NotPrime", "NotAUnit",
// ...) plus a human-readable message. Structural reports (difference-set
// verification, gluing validation, polygon checks) are returned as values,
// not thrown; Error is reserved for contract violations.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string const& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  std::string const& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace singer
