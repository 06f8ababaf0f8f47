#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctxcalc {

enum class ErrorCode {
  duplicate_dimension,
  ill_formed_domain,
  invalid_name,
  unknown_dimension,
  tag_type_mismatch,
  tag_outside_domain,
  non_simple_operand,
  empty_choice,
  unordered_range_dimension,
  non_simple_residue,
  range_too_large,
  unbounded_box,
  ill_typed_predicate,
  unknown_token,
  syntax_error,
  unbalanced_parens,
  unbound_variable,
  kind_mismatch,
  duplicate_name,
  unresolved_reference,
  demand_exhausted,
  io_error,
  invalid_command,
};

// CamelCase name used when rendering errors, e.g. "NonSimpleOperand".
std::string_view error_name(ErrorCode code) noexcept;

// Every failure in the library is reported as an Error. The position, when
// present, is a 1-based column into the text being tokenized or parsed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace ctxcalc
