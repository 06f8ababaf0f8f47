#include "ctxcalc/parser.hpp"

#include "ctxcalc/errors.hpp"

#include <optional>

namespace ctxcalc {

namespace {

[[noreturn]] void syntax_error(const Token& t, const std::string& msg) {
  throw Error(ErrorCode::syntax_error, msg, t.position);
}

std::string describe(const Token& t) {
  if (t.is(TokenKind::end)) return "end of input";
  return "'" + (t.is(TokenKind::string) ? TagValue::string(t.text).to_string() : t.text) + "'";
}

// Cursor over tokens[pos, limit); reading at limit yields an end token.
class Cursor {
 public:
  Cursor(std::span<const Token> tokens, std::size_t pos, std::size_t limit)
      : tokens_(tokens), pos_(pos), limit_(limit) {
    end_.kind = TokenKind::end;
    end_.position = limit < tokens.size() ? tokens[limit].position : (tokens.empty() ? 1 : tokens.back().position);
  }

  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < limit_ && !tokens_[pos_ + ahead].is(TokenKind::end) ? tokens_[pos_ + ahead] : end_;
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < limit_) ++pos_;
    return t;
  }
  bool accept(TokenKind k) {
    if (!peek().is(k)) return false;
    next();
    return true;
  }
  const Token& expect(TokenKind k, const char* what) {
    if (!peek().is(k)) syntax_error(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  bool at_end() const { return peek().is(TokenKind::end); }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  std::size_t limit() const { return limit_; }
  std::span<const Token> tokens() const { return tokens_; }

 private:
  std::span<const Token> tokens_;
  std::size_t pos_;
  std::size_t limit_;
  Token end_;
};

RawTag parse_raw_tag(Cursor& in) {
  const Token& t = in.peek();
  if (t.is(TokenKind::minus) && in.peek(1).is(TokenKind::integer)) {
    in.next();
    return RawTag{RawTag::Kind::integer, "-" + in.next().text};
  }
  if (t.is(TokenKind::integer)) return RawTag{RawTag::Kind::integer, in.next().text};
  if (t.is(TokenKind::string)) return RawTag{RawTag::Kind::string, in.next().text};
  if (t.is(TokenKind::identifier)) return RawTag{RawTag::Kind::word, in.next().text};
  syntax_error(t, "expected a tag value, found " + describe(t));
}

ContextLiteral parse_literal(Cursor& in) {
  ContextLiteral lit;
  in.expect(TokenKind::lbrace, "'{'");
  if (in.accept(TokenKind::rbrace)) return lit;
  do {
    in.expect(TokenKind::lparen, "'(' starting a (dimension, tag) pair");
    std::string dim = in.expect(TokenKind::identifier, "a dimension name").text;
    in.expect(TokenKind::comma, "','");
    RawTag tag = parse_raw_tag(in);
    in.expect(TokenKind::rparen, "')'");
    lit.pairs.emplace_back(std::move(dim), std::move(tag));
  } while (in.accept(TokenKind::comma));
  in.expect(TokenKind::rbrace, "'}'");
  return lit;
}

// ---- Box predicates ---------------------------------------------------------

using BOp = BoolExpr::Op;

class PredicateParser {
 public:
  explicit PredicateParser(Cursor& in) : in_(in) {}

  BoolExpr parse_or() {
    BoolExpr lhs = parse_and();
    while (in_.peek().is_word("or")) {
      const auto pos = in_.next().position;
      lhs = BoolExpr::binary(BOp::logical_or, std::move(lhs), parse_and(), pos);
    }
    return lhs;
  }

 private:
  BoolExpr parse_and() {
    BoolExpr lhs = parse_not();
    while (in_.peek().is_word("and")) {
      const auto pos = in_.next().position;
      lhs = BoolExpr::binary(BOp::logical_and, std::move(lhs), parse_not(), pos);
    }
    return lhs;
  }

  BoolExpr parse_not() {
    if (in_.peek().is_word("not")) {
      const auto pos = in_.next().position;
      return BoolExpr::unary(BOp::logical_not, parse_not(), pos);
    }
    return parse_comparison();
  }

  std::optional<BOp> comparison_op(const Token& t) const {
    switch (t.kind) {
      case TokenKind::eq:
      case TokenKind::eq_eq: return BOp::equal;
      case TokenKind::bang_eq: return BOp::not_equal;
      case TokenKind::lt: return BOp::less;
      case TokenKind::lt_eq: return BOp::less_equal;
      case TokenKind::gt: return BOp::greater;
      case TokenKind::gt_eq: return BOp::greater_equal;
      default: return std::nullopt;
    }
  }

  BoolExpr parse_comparison() {
    BoolExpr lhs = parse_additive();
    if (auto op = comparison_op(in_.peek())) {
      const auto pos = in_.next().position;
      lhs = BoolExpr::binary(*op, std::move(lhs), parse_additive(), pos);
      if (comparison_op(in_.peek())) syntax_error(in_.peek(), "comparisons do not chain; add parentheses");
    }
    return lhs;
  }

  BoolExpr parse_additive() {
    BoolExpr lhs = parse_multiplicative();
    while (in_.peek().is(TokenKind::plus) || in_.peek().is(TokenKind::minus)) {
      const Token& t = in_.next();
      const auto op = t.is(TokenKind::plus) ? BOp::add : BOp::subtract;
      lhs = BoolExpr::binary(op, std::move(lhs), parse_multiplicative(), t.position);
    }
    return lhs;
  }

  BoolExpr parse_multiplicative() {
    BoolExpr lhs = parse_unary();
    while (in_.peek().is(TokenKind::star)) {
      const auto pos = in_.next().position;
      lhs = BoolExpr::binary(BOp::multiply, std::move(lhs), parse_unary(), pos);
    }
    return lhs;
  }

  BoolExpr parse_unary() {
    if (in_.peek().is(TokenKind::minus)) {
      const auto pos = in_.next().position;
      if (in_.peek().is(TokenKind::integer)) {
        return BoolExpr::literal(TagValue::integer(-Integer(in_.next().text)), pos);
      }
      return BoolExpr::unary(BOp::negate, parse_unary(), pos);
    }
    return parse_primary();
  }

  BoolExpr parse_primary() {
    const Token& t = in_.peek();
    switch (t.kind) {
      case TokenKind::integer: in_.next(); return BoolExpr::literal(TagValue::integer(Integer(t.text)), t.position);
      case TokenKind::string: in_.next(); return BoolExpr::literal(TagValue::string(t.text), t.position);
      case TokenKind::identifier:
        in_.next();
        if (t.text == "true" || t.text == "false") return BoolExpr::literal(TagValue::boolean(t.text == "true"), t.position);
        return BoolExpr::variable(t.text, t.position);
      case TokenKind::lparen: {
        in_.next();
        BoolExpr inner = parse_or();
        if (!in_.peek().is(TokenKind::rparen)) {
          throw Error(ErrorCode::unbalanced_parens, "missing ')'", in_.peek().position);
        }
        in_.next();
        return inner;
      }
      default: syntax_error(t, "expected a predicate operand, found " + describe(t));
    }
  }

  Cursor& in_;
};

// ---- Context and context-set expressions ------------------------------------

struct Binary {
  ExprOp op;
  bool swapped = false;
};

std::optional<Binary> binary_at(Grammar g, int level, TokenKind k) {
  if (g == Grammar::context) {
    switch (level) {
      case 1:
        if (k == TokenKind::bang) return Binary{ExprOp::projection};
        if (k == TokenKind::caret) return Binary{ExprOp::hiding};
        if (k == TokenKind::slash) return Binary{ExprOp::substitution};
        break;
      case 2:
        if (k == TokenKind::bar) return Binary{ExprOp::choice};
        break;
      case 3:
        if (k == TokenKind::amp) return Binary{ExprOp::conjunction};
        if (k == TokenKind::percent) return Binary{ExprOp::disjunction};
        break;
      case 4:
        if (k == TokenKind::oplus) return Binary{ExprOp::override_op};
        if (k == TokenKind::ominus) return Binary{ExprOp::difference};
        break;
      case 5:
        if (k == TokenKind::lt_eq_gt) return Binary{ExprOp::undirected_range};
        if (k == TokenKind::eq_gt) return Binary{ExprOp::directed_range};
        if (k == TokenKind::lt_eq) return Binary{ExprOp::directed_range, true};
        break;
      case 6:
        if (k == TokenKind::eq_eq || k == TokenKind::eq) return Binary{ExprOp::equal};
        if (k == TokenKind::lt_lt_eq) return Binary{ExprOp::subset};
        if (k == TokenKind::gt_gt_eq) return Binary{ExprOp::superset};
        break;
      default: break;
    }
    return std::nullopt;
  }
  switch (level) {
    case 1:
      if (k == TokenKind::bang) return Binary{ExprOp::projection};
      if (k == TokenKind::caret) return Binary{ExprOp::hiding};
      if (k == TokenKind::slash) return Binary{ExprOp::set_substitution};
      break;
    case 2:
      if (k == TokenKind::bar) return Binary{ExprOp::choice};
      break;
    case 3:
      if (k == TokenKind::oplus) return Binary{ExprOp::override_op};
      if (k == TokenKind::ominus) return Binary{ExprOp::difference};
      break;
    case 4:
      if (k == TokenKind::gt_lt) return Binary{ExprOp::join};
      if (k == TokenKind::bracket_amp) return Binary{ExprOp::set_intersection};
      if (k == TokenKind::bracket_plus) return Binary{ExprOp::set_union};
      break;
    default: break;
  }
  return std::nullopt;
}

int loosest_level(Grammar g) { return g == Grammar::context ? 6 : 4; }

bool has_set_syntax(std::span<const Token> toks, std::size_t begin, std::size_t end,
                    const SetNamePredicate& is_set_name) {
  auto at = [&](std::size_t i) -> const Token* { return i < end ? &toks[i] : nullptr; };
  for (std::size_t i = begin; i < end; ++i) {
    const Token& t = toks[i];
    switch (t.kind) {
      case TokenKind::gt_lt:
      case TokenKind::bracket_amp:
      case TokenKind::bracket_plus:
      case TokenKind::empty_set: return true;
      case TokenKind::identifier:
        if (t.text == "emptyset") return true;
        if (t.text == "Box" && at(i + 1) && at(i + 1)->is(TokenKind::lbracket)) return true;
        if (is_set_name && is_set_name(t.text)) return true;
        break;
      case TokenKind::lbrace:
        if (at(i + 1) && at(i + 1)->is(TokenKind::lbrace)) return true;
        break;
      case TokenKind::slash:
        if (at(i + 3) && at(i + 1)->is(TokenKind::lparen) && at(i + 2)->is(TokenKind::identifier) &&
            at(i + 3)->is(TokenKind::comma)) {
          return true;
        }
        break;
      default: break;
    }
  }
  return false;
}

std::size_t effective_end(std::span<const Token> toks) {
  std::size_t n = toks.size();
  while (n > 0 && toks[n - 1].is(TokenKind::end)) --n;
  return n;
}

class ExprParser {
 public:
  ExprParser(std::span<const Token> toks, std::size_t begin, std::size_t limit, Grammar g,
             const SetNamePredicate& is_set_name)
      : in_(toks, begin, limit), grammar_(g), is_set_name_(is_set_name) {}

  Expr parse_all() {
    if (in_.at_end()) syntax_error(in_.peek(), "empty expression");
    Expr e = parse_level(loosest_level(grammar_));
    if (!in_.at_end()) {
      const Token& t = in_.peek();
      if (t.is(TokenKind::rparen)) throw Error(ErrorCode::unbalanced_parens, "unmatched ')'", t.position);
      syntax_error(t, "unexpected " + describe(t));
    }
    return e;
  }

 private:
  void reject_comparison_operand(const Expr& operand, const Token& op) const {
    if (is_comparison(operand.op)) syntax_error(op, "a comparison cannot be an operand of " + describe(op));
  }

  Expr parse_level(int level) {
    if (level == 0) return parse_primary();
    Expr lhs = parse_level(level - 1);
    while (auto bin = binary_at(grammar_, level, in_.peek().kind)) {
      const Token& op_tok = in_.next();
      reject_comparison_operand(lhs, op_tok);
      if (bin->op == ExprOp::projection || bin->op == ExprOp::hiding) {
        lhs = Expr::binary(bin->op, std::move(lhs), parse_dimset_operand(), op_tok.position);
        continue;
      }
      if (bin->op == ExprOp::set_substitution) {
        Expr e;
        e.op = ExprOp::set_substitution;
        e.position = op_tok.position;
        e.operands.push_back(std::move(lhs));
        in_.expect(TokenKind::lparen, "'(' starting a (dimension, tag) pair");
        e.name = in_.expect(TokenKind::identifier, "a dimension name").text;
        in_.expect(TokenKind::comma, "','");
        e.tag = parse_raw_tag(in_);
        in_.expect(TokenKind::rparen, "')'");
        lhs = std::move(e);
        continue;
      }
      if (bin->op == ExprOp::choice) {
        Expr e;
        e.op = ExprOp::choice;
        e.position = op_tok.position;
        e.operands.push_back(std::move(lhs));
        do {
          Expr rhs = parse_level(level - 1);
          reject_comparison_operand(rhs, op_tok);
          e.operands.push_back(std::move(rhs));
        } while (in_.accept(TokenKind::bar));
        lhs = std::move(e);
        continue;
      }
      Expr rhs = bin->op == ExprOp::substitution ? parse_primary() : parse_level(level - 1);
      reject_comparison_operand(rhs, op_tok);
      lhs = bin->swapped ? Expr::binary(bin->op, std::move(rhs), std::move(lhs), op_tok.position)
                         : Expr::binary(bin->op, std::move(lhs), std::move(rhs), op_tok.position);
      if (is_comparison(bin->op) && binary_at(grammar_, level, in_.peek().kind)) {
        syntax_error(in_.peek(), "comparisons do not chain; add parentheses");
      }
    }
    return lhs;
  }

  Expr parse_dimset_operand() {
    const Token& t = in_.peek();
    if (t.is(TokenKind::identifier)) {
      in_.next();
      return Expr::variable(t.text, t.position);
    }
    if (t.is(TokenKind::lbrace)) return parse_dimset_literal();
    syntax_error(t, "expected a dimension set, found " + describe(t));
  }

  Expr parse_dimset_literal() {
    const auto pos = in_.expect(TokenKind::lbrace, "'{'").position;
    std::vector<std::string> names;
    if (!in_.accept(TokenKind::rbrace)) {
      do {
        names.push_back(in_.expect(TokenKind::identifier, "a dimension name").text);
      } while (in_.accept(TokenKind::comma));
      in_.expect(TokenKind::rbrace, "'}'");
    }
    return Expr::dimset(std::move(names), pos);
  }

  Expr parse_primary() {
    const Token& t = in_.peek();
    switch (t.kind) {
      case TokenKind::identifier: {
        if (t.text == "Box" && in_.peek(1).is(TokenKind::lbracket)) return parse_box();
        in_.next();
        if (t.text == "emptyset") {
          Expr e;
          e.op = ExprOp::empty_set;
          e.position = t.position;
          return e;
        }
        return Expr::variable(t.text, t.position);
      }
      case TokenKind::empty_set: {
        in_.next();
        Expr e;
        e.op = ExprOp::empty_set;
        e.position = t.position;
        return e;
      }
      case TokenKind::lbrace: {
        const Token& after = in_.peek(1);
        if (after.is(TokenKind::identifier)) return parse_dimset_literal();
        Expr e;
        e.position = t.position;
        if (after.is(TokenKind::lbrace)) {
          e.op = ExprOp::set_literal;
          in_.next();
          do {
            e.literals.push_back(parse_literal(in_));
          } while (in_.accept(TokenKind::comma));
          in_.expect(TokenKind::rbrace, "'}'");
        } else {
          e.op = ExprOp::context_literal;
          e.literals.push_back(parse_literal(in_));
        }
        return e;
      }
      case TokenKind::lparen: return parse_group();
      case TokenKind::rparen: throw Error(ErrorCode::unbalanced_parens, "unmatched ')'", t.position);
      default: syntax_error(t, "expected an operand, found " + describe(t));
    }
  }

  Expr parse_group() {
    const Token& open = in_.next();
    const auto toks = in_.tokens();
    std::size_t depth = 1;
    std::size_t close = in_.pos();
    for (; close < in_.limit(); ++close) {
      if (toks[close].is(TokenKind::lparen)) ++depth;
      if (toks[close].is(TokenKind::rparen) && --depth == 0) break;
    }
    if (close >= in_.limit() || depth != 0) {
      throw Error(ErrorCode::unbalanced_parens, "missing ')' for '(' at column " + std::to_string(open.position),
                  open.position);
    }
    const Grammar g = has_set_syntax(toks, in_.pos(), close, is_set_name_) ? Grammar::context_set : Grammar::context;
    if (close == in_.pos()) syntax_error(toks[close], "empty parentheses");
    Expr inner = ExprParser(toks, in_.pos(), close, g, is_set_name_).parse_all();
    in_.seek(close + 1);
    return inner;
  }

  Expr parse_box() {
    Expr e;
    e.op = ExprOp::box_literal;
    e.position = in_.next().position;
    in_.expect(TokenKind::lbracket, "'['");
    do {
      e.dim_names.push_back(in_.expect(TokenKind::identifier, "a dimension name").text);
    } while (in_.accept(TokenKind::comma));
    in_.expect(TokenKind::bar, "'|' before the Box predicate");
    e.predicate = PredicateParser(in_).parse_or();
    in_.expect(TokenKind::rbracket, "']' closing the Box");
    return e;
  }

  Cursor in_;
  Grammar grammar_;
  const SetNamePredicate& is_set_name_;
};

Expr parse_with(std::span<const Token> tokens, Grammar g, const SetNamePredicate& is_set_name) {
  return ExprParser(tokens, 0, effective_end(tokens), g, is_set_name).parse_all();
}

}  // namespace

Expr parse_context_expr(std::span<const Token> tokens, const SetNamePredicate& is_set_name) {
  return parse_with(tokens, Grammar::context, is_set_name);
}

Expr parse_context_expr(std::string_view text, const SetNamePredicate& is_set_name) {
  return parse_context_expr(tokenize(text), is_set_name);
}

Expr parse_context_set_expr(std::span<const Token> tokens, const SetNamePredicate& is_set_name) {
  return parse_with(tokens, Grammar::context_set, is_set_name);
}

Expr parse_context_set_expr(std::string_view text, const SetNamePredicate& is_set_name) {
  return parse_context_set_expr(tokenize(text), is_set_name);
}

ParsedExpr parse_expression(std::span<const Token> tokens, const SetNamePredicate& is_set_name) {
  const std::size_t end = effective_end(tokens);
  const Grammar g = has_set_syntax(tokens, 0, end, is_set_name) ? Grammar::context_set : Grammar::context;
  return ParsedExpr{parse_with(tokens, g, is_set_name), g};
}

ParsedExpr parse_expression(std::string_view text, const SetNamePredicate& is_set_name) {
  return parse_expression(tokenize(text), is_set_name);
}

BoolExpr parse_predicate(std::span<const Token> tokens, std::size_t& pos) {
  Cursor in(tokens, pos, effective_end(tokens));
  BoolExpr e = PredicateParser(in).parse_or();
  pos = in.pos();
  return e;
}

ContextLiteral parse_context_literal(std::span<const Token> tokens, std::size_t& pos) {
  Cursor in(tokens, pos, effective_end(tokens));
  ContextLiteral lit = parse_literal(in);
  pos = in.pos();
  return lit;
}

}  // namespace ctxcalc
