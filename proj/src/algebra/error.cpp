#include "psq/error.hpp"

namespace psq {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedProduct: return "UNSUPPORTED_PRODUCT";
    case ErrorCode::IncompatiblePhase: return "INCOMPATIBLE_PHASE";
    case ErrorCode::NonInvertible: return "NON_INVERTIBLE";
    case ErrorCode::NonInvertibleConstantTerm: return "NON_INVERTIBLE_CONSTANT_TERM";
    case ErrorCode::NotFunctionOfQ: return "NOT_FUNCTION_OF_Q";
    case ErrorCode::NotSymplectic: return "NOT_SYMPLECTIC";
    case ErrorCode::SingularCayley: return "SINGULAR_CAYLEY";
    case ErrorCode::DegenerateDecomposition: return "DEGENERATE_DECOMPOSITION";
    case ErrorCode::SingularDenominator: return "SINGULAR_DENOMINATOR";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::SingularIntegrand: return "SINGULAR_INTEGRAND";
    case ErrorCode::UnsupportedVariant: return "UNSUPPORTED_VARIANT";
    case ErrorCode::MixedPhase: return "MIXED_PHASE";
    case ErrorCode::FlowEscape: return "FLOW_ESCAPE";
    case ErrorCode::ZeroNode: return "ZERO_NODE";
    case ErrorCode::DomainError: return "DOMAIN_ERROR";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::UnderResolved: return "UNDER_RESOLVED";
    case ErrorCode::ResourceLimit: return "RESOURCE_LIMIT";
    case ErrorCode::SyntaxError: return "SYNTAX_ERROR";
    case ErrorCode::UnknownSymbol: return "UNKNOWN_SYMBOL";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace psq
