#pragma once

#include "ctxcalc/context_set.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctxcalc {

// Predicate language for Box sets. Dimension names stand for the tag the
// context binds to that dimension.
struct BoolExpr {
  enum class Op {
    literal,
    name,  // a Box dimension, or an enum label until box_make resolves it
    negate,
    logical_not,
    add,
    subtract,
    multiply,
    equal,
    not_equal,
    less,
    less_equal,
    greater,
    greater_equal,
    logical_and,
    logical_or,
  };

  Op op = Op::literal;
  std::optional<TagValue> value;
  std::string name;
  std::vector<BoolExpr> args;
  std::size_t position = 0;

  static BoolExpr literal(TagValue v, std::size_t pos = 0);
  static BoolExpr variable(std::string n, std::size_t pos = 0);
  static BoolExpr unary(Op op, BoolExpr arg, std::size_t pos = 0);
  static BoolExpr binary(Op op, BoolExpr lhs, BoolExpr rhs, std::size_t pos = 0);

  // Structural; positions are ignored.
  friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
    return a.op == b.op && a.value == b.value && a.name == b.name && a.args == b.args;
  }
};

std::string to_string(const BoolExpr& e);

class Box {
 public:
  const std::vector<DimensionPtr>& dims() const noexcept { return dims_; }
  const BoolExpr& predicate() const noexcept { return predicate_; }
  DimSet dim_set() const;

  // Same dimensions in the same order and structurally equal predicates.
  friend bool operator==(const Box& a, const Box& b);

 private:
  Box(std::vector<DimensionPtr> dims, BoolExpr predicate)
      : dims_(std::move(dims)), predicate_(std::move(predicate)) {}
  friend Box box_make(std::vector<DimensionPtr> dims, BoolExpr predicate);

  std::vector<DimensionPtr> dims_;
  BoolExpr predicate_;
};

// Resolves enum labels and type-checks the predicate against the dimensions.
// Throws IllTypedPredicate, or SyntaxError for an empty/duplicated dim list.
Box box_make(std::vector<DimensionPtr> dims, BoolExpr predicate);

// True iff c binds exactly the box dimensions and satisfies the predicate.
// Throws NonSimpleOperand unless c is simple.
bool box_contains(const Box& box, const Context& c);

// All members, filtered from the product of the declared domains.
// Throws UnboundedBox if a dimension has no finite domain.
ContextSet box_enumerate(const Box& box);

// Box[d1,d2 | d1 < d2]
std::string to_string(const Box& box);

}  // namespace ctxcalc
