#include "ctxcalc/expr.hpp"

namespace ctxcalc {

std::string to_string(const RawTag& tag) {
  if (tag.kind != RawTag::Kind::string) return tag.text;
  return TagValue::string(tag.text).to_string();
}

std::string_view op_name(ExprOp op) noexcept {
  switch (op) {
    case ExprOp::variable: return "variable";
    case ExprOp::context_literal: return "context_literal";
    case ExprOp::set_literal: return "set_literal";
    case ExprOp::empty_set: return "empty_set";
    case ExprOp::dimset_literal: return "dimset_literal";
    case ExprOp::box_literal: return "box_literal";
    case ExprOp::projection: return "projection";
    case ExprOp::hiding: return "hiding";
    case ExprOp::substitution: return "substitution";
    case ExprOp::set_substitution: return "set_substitution";
    case ExprOp::choice: return "choice";
    case ExprOp::conjunction: return "conjunction";
    case ExprOp::disjunction: return "disjunction";
    case ExprOp::override_op: return "override";
    case ExprOp::difference: return "difference";
    case ExprOp::undirected_range: return "undirected_range";
    case ExprOp::directed_range: return "directed_range";
    case ExprOp::join: return "join";
    case ExprOp::set_intersection: return "set_intersection";
    case ExprOp::set_union: return "set_union";
    case ExprOp::equal: return "equal";
    case ExprOp::subset: return "subset";
    case ExprOp::superset: return "superset";
  }
  return "?";
}

bool is_comparison(ExprOp op) noexcept {
  return op == ExprOp::equal || op == ExprOp::subset || op == ExprOp::superset;
}

Expr Expr::variable(std::string name, std::size_t pos) {
  Expr e;
  e.op = ExprOp::variable;
  e.name = std::move(name);
  e.position = pos;
  return e;
}

Expr Expr::binary(ExprOp op, Expr lhs, Expr rhs, std::size_t pos) {
  Expr e;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  e.position = pos;
  return e;
}

Expr Expr::dimset(std::vector<std::string> names, std::size_t pos) {
  Expr e;
  e.op = ExprOp::dimset_literal;
  e.dim_names = std::move(names);
  e.position = pos;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  return a.op == b.op && a.name == b.name && a.operands == b.operands && a.dim_names == b.dim_names &&
         a.literals == b.literals && a.tag == b.tag && a.predicate == b.predicate;
}

int precedence(Grammar g, ExprOp op) noexcept {
  if (g == Grammar::context) {
    switch (op) {
      case ExprOp::projection:
      case ExprOp::hiding:
      case ExprOp::substitution: return 1;
      case ExprOp::choice: return 2;
      case ExprOp::conjunction:
      case ExprOp::disjunction: return 3;
      case ExprOp::override_op:
      case ExprOp::difference: return 4;
      case ExprOp::undirected_range:
      case ExprOp::directed_range: return 5;
      case ExprOp::equal:
      case ExprOp::subset:
      case ExprOp::superset: return 6;
      default: return 0;
    }
  }
  switch (op) {
    case ExprOp::projection:
    case ExprOp::hiding:
    case ExprOp::set_substitution: return 1;
    case ExprOp::choice: return 2;
    case ExprOp::override_op:
    case ExprOp::difference: return 3;
    case ExprOp::join:
    case ExprOp::set_intersection:
    case ExprOp::set_union: return 4;
    default: return 0;
  }
}

namespace {

bool is_atom(ExprOp op) {
  switch (op) {
    case ExprOp::variable:
    case ExprOp::context_literal:
    case ExprOp::set_literal:
    case ExprOp::empty_set:
    case ExprOp::dimset_literal:
    case ExprOp::box_literal: return true;
    default: return false;
  }
}

const char* symbol(ExprOp op) {
  switch (op) {
    case ExprOp::projection: return "!";
    case ExprOp::hiding: return "^";
    case ExprOp::substitution:
    case ExprOp::set_substitution: return "/";
    case ExprOp::choice: return "|";
    case ExprOp::conjunction: return "&";
    case ExprOp::disjunction: return "%";
    case ExprOp::override_op: return "(+)";
    case ExprOp::difference: return "(-)";
    case ExprOp::undirected_range: return "<=>";
    case ExprOp::directed_range: return "=>";
    case ExprOp::join: return "><";
    case ExprOp::set_intersection: return "[&]";
    case ExprOp::set_union: return "[+]";
    case ExprOp::equal: return "==";
    case ExprOp::subset: return "<<=";
    case ExprOp::superset: return ">>=";
    default: return "?";
  }
}

Grammar other(Grammar g) { return g == Grammar::context ? Grammar::context_set : Grammar::context; }

void print_literal(const ContextLiteral& lit, std::string& out) {
  out += '{';
  for (std::size_t i = 0; i < lit.pairs.size(); ++i) {
    if (i) out += ',';
    out += '(' + lit.pairs[i].first + ',' + to_string(lit.pairs[i].second) + ')';
  }
  out += '}';
}

void print(const Expr& e, Grammar g, std::string& out);

// Prints an operand, wrapping it when it binds no tighter than `limit`
// allows. Operators foreign to the grammar are always wrapped.
void print_operand(const Expr& e, Grammar g, int limit, std::string& out) {
  if (is_atom(e.op)) {
    print(e, g, out);
    return;
  }
  const int level = precedence(g, e.op);
  if (level == 0) {
    out += '(';
    print(e, other(g), out);
    out += ')';
    return;
  }
  const bool wrap = level > limit;
  if (wrap) out += '(';
  print(e, g, out);
  if (wrap) out += ')';
}

void print(const Expr& e, Grammar g, std::string& out) {
  switch (e.op) {
    case ExprOp::variable: out += e.name; return;
    case ExprOp::context_literal: print_literal(e.literals.front(), out); return;
    case ExprOp::set_literal:
      out += '{';
      for (std::size_t i = 0; i < e.literals.size(); ++i) {
        if (i) out += ',';
        print_literal(e.literals[i], out);
      }
      out += '}';
      return;
    case ExprOp::empty_set: out += "emptyset"; return;
    case ExprOp::dimset_literal:
      out += '{';
      for (std::size_t i = 0; i < e.dim_names.size(); ++i) {
        if (i) out += ',';
        out += e.dim_names[i];
      }
      out += '}';
      return;
    case ExprOp::box_literal:
      out += "Box[";
      for (std::size_t i = 0; i < e.dim_names.size(); ++i) {
        if (i) out += ',';
        out += e.dim_names[i];
      }
      out += " | " + to_string(e.predicate) + "]";
      return;
    case ExprOp::set_substitution:
      print_operand(e.operands[0], g, 1, out);
      out += " / (" + e.name + ", " + to_string(e.tag) + ")";
      return;
    case ExprOp::projection:
    case ExprOp::hiding:
      print_operand(e.operands[0], g, 1, out);
      out += ' ';
      out += symbol(e.op);
      out += ' ';
      print(e.operands[1], g, out);
      return;
    case ExprOp::substitution:
      print_operand(e.operands[0], g, 1, out);
      out += " / ";
      print_operand(e.operands[1], g, 0, out);
      return;
    case ExprOp::choice:
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out += " | ";
        print_operand(e.operands[i], g, 1, out);
      }
      return;
    default: break;
  }
  const int level = precedence(g, e.op);
  const bool chain = !is_comparison(e.op);
  print_operand(e.operands[0], g, chain ? level : level - 1, out);
  out += ' ';
  out += symbol(e.op);
  out += ' ';
  print_operand(e.operands[1], g, level - 1, out);
}

}  // namespace

std::string to_string(const Expr& e, Grammar g) {
  std::string out;
  if (!is_atom(e.op) && precedence(g, e.op) == 0) g = other(g);
  print(e, g, out);
  return out;
}

}  // namespace ctxcalc
