#pragma once

#include "ctxcalc/box.hpp"
#include "ctxcalc/choice_rng.hpp"
#include "ctxcalc/context_set.hpp"
#include "ctxcalc/expr.hpp"
#include "ctxcalc/parser.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace ctxcalc {

enum class ValueKind { context, context_set, dimset, box, boolean };

std::string_view kind_name(ValueKind kind) noexcept;

using Value = std::variant<Context, ContextSet, DimSet, Box, bool>;

ValueKind kind_of(const Value& v) noexcept;
std::string to_string(const Value& v);

// Named bindings plus the dimension registry they refer to.
class Environment {
 public:
  explicit Environment(std::uint64_t seed = 0) : seed_(seed) {}

  DimensionRegistry& registry() noexcept { return registry_; }
  const DimensionRegistry& registry() const noexcept { return registry_; }

  // Rebinding replaces the previous value. Booleans cannot be bound.
  void bind(const std::string& name, Value value);
  const Value* find(std::string_view name) const;
  // Throws UnboundVariable.
  const Value& lookup(std::string_view name, std::size_t position = 0) const;
  std::optional<ValueKind> kind_of(std::string_view name) const;
  const std::map<std::string, Value, std::less<>>& bindings() const noexcept { return bindings_; }

  // For parsing: names bound to context sets or Boxes.
  SetNamePredicate set_names() const;

  std::uint64_t seed() const noexcept { return seed_; }
  void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

 private:
  DimensionRegistry registry_;
  std::map<std::string, Value, std::less<>> bindings_;
  std::uint64_t seed_;
};

// Resolves a source tag against a dimension. Throws TagTypeMismatch,
// TagOutsideDomain.
TagValue resolve_tag(const Dimension& dim, const RawTag& raw);
Context resolve_literal(const DimensionRegistry& registry, const ContextLiteral& lit);

// Operators dispatch on operand kinds: a context operator applied to context
// sets (or Boxes, which are enumerated) is the lifted operator. Range results
// are context sets; comparisons are booleans. Errors without a position are
// given the position of the node that raised them.
// Throws UnboundVariable, KindMismatch and every operator error.
Value evaluate(const Expr& e, const Environment& env, ChoiceRng& rng);
// Uses a fresh ChoiceRng seeded from env.seed().
Value evaluate(const Expr& e, const Environment& env);

// Convenience for tests and tools: tokenize, pick a grammar and evaluate.
Value evaluate_text(std::string_view text, const Environment& env, ChoiceRng& rng);

}  // namespace ctxcalc
