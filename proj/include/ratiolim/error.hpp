#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratiolim {

enum class ErrorCode {
  rejected_order,
  rejected_last_weight_zero,
  rejected_trivial,
  rejected_length,
  zero_run_bound_violated,
  no_convergence,
  root_modulus_zero,
  insufficient_terms,
  network_unavailable,
  parse_error,
  invalid_argument,
  division_by_zero,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ratiolim
