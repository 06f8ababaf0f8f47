#include "ctxcalc/errors.hpp"

namespace ctxcalc {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::duplicate_dimension: return "DuplicateDimension";
    case ErrorCode::ill_formed_domain: return "IllFormedDomain";
    case ErrorCode::invalid_name: return "InvalidName";
    case ErrorCode::unknown_dimension: return "UnknownDimension";
    case ErrorCode::tag_type_mismatch: return "TagTypeMismatch";
    case ErrorCode::tag_outside_domain: return "TagOutsideDomain";
    case ErrorCode::non_simple_operand: return "NonSimpleOperand";
    case ErrorCode::empty_choice: return "EmptyChoice";
    case ErrorCode::unordered_range_dimension: return "UnorderedRangeDimension";
    case ErrorCode::non_simple_residue: return "NonSimpleResidue";
    case ErrorCode::range_too_large: return "RangeTooLarge";
    case ErrorCode::unbounded_box: return "UnboundedBox";
    case ErrorCode::ill_typed_predicate: return "IllTypedPredicate";
    case ErrorCode::unknown_token: return "UnknownToken";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unbalanced_parens: return "UnbalancedParens";
    case ErrorCode::unbound_variable: return "UnboundVariable";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::duplicate_name: return "DuplicateName";
    case ErrorCode::unresolved_reference: return "UnresolvedReference";
    case ErrorCode::demand_exhausted: return "DemandExhausted";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::invalid_command: return "InvalidCommand";
  }
  return "Error";
}

}  // namespace ctxcalc
