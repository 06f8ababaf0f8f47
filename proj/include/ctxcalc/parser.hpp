#pragma once

#include "ctxcalc/expr.hpp"
#include "ctxcalc/lexer.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>

namespace ctxcalc {

// Tells the parser which names denote context sets (or Boxes). A
// parenthesized group, and with parse_expression the whole input, is read
// with the context-set grammar when it mentions a set-valued name or any
// set-only syntax (><, [&], [+], Box[...], {{...}}, emptyset, s / (d, t)).
using SetNamePredicate = std::function<bool(std::string_view)>;

// Context expressions. Tightest first:
//   ! ^ /   then |   then & %   then (+) (-)   then <=> => <=   then == <<= >>=
// Equal levels associate to the left; comparisons do not chain. `a <= b` is
// read as `b => a`. Throws UnknownToken, SyntaxError, UnbalancedParens.
Expr parse_context_expr(std::span<const Token> tokens, const SetNamePredicate& is_set_name = {});
Expr parse_context_expr(std::string_view text, const SetNamePredicate& is_set_name = {});

// Context-set expressions. Tightest first:
//   ! ^ /(d,t)   then |   then (+) (-)   then >< [&] [+]
Expr parse_context_set_expr(std::span<const Token> tokens, const SetNamePredicate& is_set_name = {});
Expr parse_context_set_expr(std::string_view text, const SetNamePredicate& is_set_name = {});

struct ParsedExpr {
  Expr ast;
  Grammar grammar;
};

// Picks the grammar for the whole input with the same rule used for groups.
ParsedExpr parse_expression(std::span<const Token> tokens, const SetNamePredicate& is_set_name = {});
ParsedExpr parse_expression(std::string_view text, const SetNamePredicate& is_set_name = {});

// Box predicate language, parsed up to (not including) a closing `]` or the end.
BoolExpr parse_predicate(std::span<const Token> tokens, std::size_t& pos);

// Context literal `{(d,1),(e,"x")}`, starting at pos.
ContextLiteral parse_context_literal(std::span<const Token> tokens, std::size_t& pos);

}  // namespace ctxcalc
