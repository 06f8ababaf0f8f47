#include "ctxcalc/errors.hpp"
#include "ctxcalc/streams.hpp"

namespace ctxcalc::streams {

namespace {

class StreamParser {
 public:
  StreamParser(std::span<const Token> tokens, std::size_t pos, StreamGraph& graph)
      : tokens_(tokens), pos_(pos), graph_(graph) {}

  std::size_t pos() const noexcept { return pos_; }
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  NodeId expression() { return fby_level(); }

  void expect(TokenKind kind, std::string_view what) {
    if (!peek().is(kind)) fail("expected " + std::string(what));
    ++pos_;
  }

  std::string identifier(std::string_view what) {
    if (!peek().is(TokenKind::identifier)) fail("expected " + std::string(what));
    return tokens_[pos_++].text;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    const std::string found = t.is(TokenKind::end) ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::syntax_error, message + ", found " + found, t.position);
  }

 private:
  bool accept_word(std::string_view w) {
    if (!peek().is_word(w)) return false;
    ++pos_;
    return true;
  }

  bool accept(TokenKind kind) {
    if (!peek().is(kind)) return false;
    ++pos_;
    return true;
  }

  // Optional `.dim` suffix after a temporal operator.
  std::string dimension_suffix() {
    if (peek().is(TokenKind::dot) && peek(1).is(TokenKind::identifier)) {
      pos_ += 1;
      return identifier("dimension");
    }
    return std::string(default_dimension);
  }

  NodeId fby_level() {
    const NodeId lhs = sampling_level();
    if (accept_word("fby")) {
      const std::string dim = dimension_suffix();
      return graph_.fby(lhs, fby_level(), dim);
    }
    return lhs;
  }

  NodeId sampling_level() {
    NodeId lhs = or_level();
    while (true) {
      std::string word;
      for (const char* w : {"wvr", "whenever", "asa", "upon"}) {
        if (peek().is_word(w)) word = w;
      }
      if (word.empty()) return lhs;
      ++pos_;
      const std::string dim = dimension_suffix();
      const NodeId rhs = or_level();
      if (word == "asa") {
        lhs = graph_.asa(lhs, rhs, dim);
      } else if (word == "upon") {
        lhs = graph_.upon(lhs, rhs, dim);
      } else {
        lhs = graph_.wvr(lhs, rhs, dim);
      }
    }
  }

  NodeId or_level() {
    NodeId lhs = and_level();
    while (accept_word("or")) lhs = graph_.binary(PointOp::logical_or, lhs, and_level());
    return lhs;
  }

  NodeId and_level() {
    NodeId lhs = not_level();
    while (accept_word("and")) lhs = graph_.binary(PointOp::logical_and, lhs, not_level());
    return lhs;
  }

  NodeId not_level() {
    if (accept_word("not")) return graph_.unary(PointOp::logical_not, not_level());
    return comparison();
  }

  std::optional<PointOp> comparison_op() const {
    switch (peek().kind) {
      case TokenKind::eq:
      case TokenKind::eq_eq: return PointOp::equal;
      case TokenKind::bang_eq: return PointOp::not_equal;
      case TokenKind::lt: return PointOp::less;
      case TokenKind::lt_eq: return PointOp::less_equal;
      case TokenKind::gt: return PointOp::greater;
      case TokenKind::gt_eq: return PointOp::greater_equal;
      default: return std::nullopt;
    }
  }

  NodeId comparison() {
    const NodeId lhs = additive();
    const auto op = comparison_op();
    if (!op) return lhs;
    ++pos_;
    const NodeId rhs = additive();
    if (comparison_op()) fail("comparisons do not chain");
    return graph_.binary(*op, lhs, rhs);
  }

  NodeId additive() {
    NodeId lhs = multiplicative();
    while (true) {
      if (accept(TokenKind::plus)) {
        lhs = graph_.binary(PointOp::add, lhs, multiplicative());
      } else if (accept(TokenKind::minus)) {
        lhs = graph_.binary(PointOp::subtract, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  NodeId multiplicative() {
    NodeId lhs = at_level();
    while (true) {
      if (accept(TokenKind::star)) {
        lhs = graph_.binary(PointOp::multiply, lhs, at_level());
      } else if (accept(TokenKind::slash)) {
        lhs = graph_.binary(PointOp::divide, lhs, at_level());
      } else if (accept(TokenKind::percent)) {
        lhs = graph_.binary(PointOp::modulo, lhs, at_level());
      } else {
        return lhs;
      }
    }
  }

  NodeId at_level() {
    NodeId lhs = prefix();
    while (accept(TokenKind::at)) {
      expect(TokenKind::dot, "'.' after '@'");
      const std::string dim = identifier("dimension after '@.'");
      lhs = graph_.at(lhs, dim, prefix());
    }
    return lhs;
  }

  NodeId prefix() {
    if (accept(TokenKind::minus)) {
      if (peek().is(TokenKind::integer)) {
        return graph_.constant(StreamValue::integer(-Integer(tokens_[pos_++].text)));
      }
      return graph_.unary(PointOp::negate, prefix());
    }
    for (const char* w : {"first", "next", "prev"}) {
      if (!accept_word(w)) continue;
      const std::string dim = dimension_suffix();
      const NodeId arg = prefix();
      const std::string_view word = w;
      if (word == "first") return graph_.first(arg, dim);
      if (word == "next") return graph_.next(arg, dim);
      return graph_.prev(arg, dim);
    }
    return primary();
  }

  StreamValue literal_item() {
    bool negative = accept(TokenKind::minus);
    const Token& t = peek();
    if (t.is(TokenKind::integer)) {
      ++pos_;
      Integer v(t.text);
      return StreamValue::integer(negative ? Integer(-v) : v);
    }
    if (!negative) {
      if (accept_word("true")) return StreamValue::boolean(true);
      if (accept_word("false")) return StreamValue::boolean(false);
      if (accept_word("nil")) return StreamValue::nil();
    }
    fail("expected an integer, true, false or nil");
  }

  NodeId primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::integer:
        ++pos_;
        return graph_.constant(StreamValue::integer(Integer(t.text)));
      case TokenKind::lparen: {
        ++pos_;
        const NodeId inner = expression();
        if (!peek().is(TokenKind::rparen)) {
          throw Error(ErrorCode::unbalanced_parens, "missing ')'", peek().position);
        }
        ++pos_;
        return inner;
      }
      case TokenKind::lbracket: {
        ++pos_;
        std::vector<StreamValue> items;
        if (!accept(TokenKind::rbracket)) {
          do {
            items.push_back(literal_item());
          } while (accept(TokenKind::comma));
          expect(TokenKind::rbracket, "']'");
        }
        return graph_.literal(std::move(items), dimension_suffix());
      }
      case TokenKind::hash: {
        ++pos_;
        return graph_.query(dimension_suffix());
      }
      case TokenKind::identifier: break;
      default: fail("expected a stream expression");
    }
    if (accept_word("true")) return graph_.constant(StreamValue::boolean(true));
    if (accept_word("false")) return graph_.constant(StreamValue::boolean(false));
    if (accept_word("nil")) return graph_.constant(StreamValue::nil());
    if (accept_word("if")) {
      const NodeId cond = expression();
      if (!accept_word("then")) fail("expected 'then'");
      const NodeId then_branch = expression();
      if (!accept_word("else")) fail("expected 'else'");
      const NodeId else_branch = expression();
      accept_word("fi");
      return graph_.if_then_else(cond, then_branch, else_branch);
    }
    static constexpr std::string_view reserved[] = {"fby", "wvr", "whenever", "asa", "upon", "and", "or",
                                                    "not", "then", "else", "fi", "first", "next", "prev"};
    for (auto r : reserved) {
      if (t.text == r) fail("expected a stream expression");
    }
    ++pos_;
    return graph_.ref(t.text);
  }

  std::span<const Token> tokens_;
  std::size_t pos_;
  StreamGraph& graph_;
};

void expect_end(const StreamParser& p) {
  if (p.peek().is(TokenKind::rparen)) {
    throw Error(ErrorCode::unbalanced_parens, "unexpected ')'", p.peek().position);
  }
  if (!p.peek().is(TokenKind::end)) p.fail("unexpected trailing input");
}

}  // namespace

NodeId parse_stream_expr(std::span<const Token> tokens, std::size_t& pos, StreamGraph& graph) {
  StreamParser p(tokens, pos, graph);
  const NodeId id = p.expression();
  pos = p.pos();
  return id;
}

NodeId parse_stream_expr(std::string_view text, StreamGraph& graph) {
  const auto tokens = tokenize(text);
  StreamParser p(tokens, 0, graph);
  const NodeId id = p.expression();
  expect_end(p);
  return id;
}

std::vector<std::pair<std::string, NodeId>> parse_equations(std::string_view text, StreamGraph& graph) {
  const auto tokens = tokenize(text);
  std::vector<std::pair<std::string, NodeId>> out;
  std::size_t pos = 0;
  while (!tokens[pos].is(TokenKind::end)) {
    StreamParser p(tokens, pos, graph);
    std::string name = p.identifier("stream name");
    p.expect(TokenKind::eq, "'=' after stream name");
    const NodeId root = p.expression();
    out.emplace_back(std::move(name), root);
    pos = p.pos();
    if (tokens[pos].is(TokenKind::semicolon)) {
      ++pos;
      continue;
    }
    expect_end(p);
  }
  if (out.empty()) {
    throw Error(ErrorCode::syntax_error, "expected at least one equation", tokens[0].position);
  }
  return out;
}

}  // namespace ctxcalc::streams
