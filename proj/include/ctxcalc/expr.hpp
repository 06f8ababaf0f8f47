#pragma once

#include "ctxcalc/box.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ctxcalc {

// A tag as written in source text; its type is fixed once the dimension is known.
struct RawTag {
  enum class Kind { integer, string, word };
  Kind kind = Kind::integer;
  std::string text;  // integers keep their sign; words are true/false or enum labels

  friend bool operator==(const RawTag&, const RawTag&) = default;
};

std::string to_string(const RawTag& tag);

struct ContextLiteral {
  std::vector<std::pair<std::string, RawTag>> pairs;

  friend bool operator==(const ContextLiteral&, const ContextLiteral&) = default;
};

enum class ExprOp {
  variable,
  context_literal,
  set_literal,
  empty_set,
  dimset_literal,
  box_literal,
  projection,        // operands: expr, dimset
  hiding,            // operands: expr, dimset
  substitution,      // operands: expr, expr
  set_substitution,  // operands: expr; name = dimension, tag
  choice,            // n-ary
  conjunction,
  disjunction,
  override_op,
  difference,
  undirected_range,
  directed_range,
  join,
  set_intersection,
  set_union,
  equal,
  subset,
  superset,
};

std::string_view op_name(ExprOp op) noexcept;
bool is_comparison(ExprOp op) noexcept;

// One AST node type serves both the context and the context-set grammar.
// Equality is structural and ignores source positions.
struct Expr {
  ExprOp op = ExprOp::variable;
  std::string name;                   // variable name, or the set_substitution dimension
  std::vector<Expr> operands;
  std::vector<std::string> dim_names;  // dimset_literal, box_literal dimensions
  std::vector<ContextLiteral> literals;  // one for context_literal, any number for set_literal
  RawTag tag;                          // set_substitution
  BoolExpr predicate;                  // box_literal
  std::size_t position = 1;

  static Expr variable(std::string name, std::size_t pos = 1);
  static Expr binary(ExprOp op, Expr lhs, Expr rhs, std::size_t pos = 1);
  static Expr dimset(std::vector<std::string> names, std::size_t pos = 1);

  friend bool operator==(const Expr& a, const Expr& b);
};

enum class Grammar { context, context_set };

// Binding level of an operator in a grammar: 1 binds tightest. 0 means the
// operator does not belong to that grammar.
int precedence(Grammar g, ExprOp op) noexcept;

// Prints with the fewest parentheses that reparse to the same tree.
std::string to_string(const Expr& e, Grammar g);

}  // namespace ctxcalc
