#include "ratiolim/error.hpp"

namespace ratiolim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::rejected_order: return "RejectedOrder";
    case ErrorCode::rejected_last_weight_zero: return "RejectedLastWeightZero";
    case ErrorCode::rejected_trivial: return "RejectedTrivial";
    case ErrorCode::rejected_length: return "RejectedLength";
    case ErrorCode::zero_run_bound_violated: return "ZeroRunBoundViolated";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::root_modulus_zero: return "RootModulusZero";
    case ErrorCode::insufficient_terms: return "InsufficientTerms";
    case ErrorCode::network_unavailable: return "NetworkUnavailable";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::division_by_zero: return "DivisionByZero";
  }
  return "Unknown";
}

}  // namespace ratiolim
