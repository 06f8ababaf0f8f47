#include "ctxcalc/box.hpp"

#include "ctxcalc/context_ops.hpp"
#include "ctxcalc/errors.hpp"

namespace ctxcalc {

BoolExpr BoolExpr::literal(TagValue v, std::size_t pos) {
  BoolExpr e;
  e.op = Op::literal;
  e.value = std::move(v);
  e.position = pos;
  return e;
}

BoolExpr BoolExpr::variable(std::string n, std::size_t pos) {
  BoolExpr e;
  e.op = Op::name;
  e.name = std::move(n);
  e.position = pos;
  return e;
}

BoolExpr BoolExpr::unary(Op op, BoolExpr arg, std::size_t pos) {
  BoolExpr e;
  e.op = op;
  e.args.push_back(std::move(arg));
  e.position = pos;
  return e;
}

BoolExpr BoolExpr::binary(Op op, BoolExpr lhs, BoolExpr rhs, std::size_t pos) {
  BoolExpr e;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.position = pos;
  return e;
}

namespace {

using Op = BoolExpr::Op;

// Binding strength used by the printer; higher binds tighter.
int strength(Op op) {
  switch (op) {
    case Op::logical_or: return 1;
    case Op::logical_and: return 2;
    case Op::logical_not: return 3;
    case Op::equal:
    case Op::not_equal:
    case Op::less:
    case Op::less_equal:
    case Op::greater:
    case Op::greater_equal: return 4;
    case Op::add:
    case Op::subtract: return 5;
    case Op::multiply: return 6;
    case Op::negate: return 7;
    case Op::literal:
    case Op::name: return 8;
  }
  return 8;
}

const char* symbol(Op op) {
  switch (op) {
    case Op::logical_or: return "or";
    case Op::logical_and: return "and";
    case Op::logical_not: return "not";
    case Op::equal: return "=";
    case Op::not_equal: return "!=";
    case Op::less: return "<";
    case Op::less_equal: return "<=";
    case Op::greater: return ">";
    case Op::greater_equal: return ">=";
    case Op::add: return "+";
    case Op::subtract: return "-";
    case Op::multiply: return "*";
    case Op::negate: return "-";
    default: return "?";
  }
}

bool is_comparison(Op op) { return strength(op) == 4; }

struct Type {
  TagKind kind;
  std::shared_ptr<const EnumType> enum_type;

  bool operator==(const Type& o) const {
    if (kind != o.kind) return false;
    return kind != TagKind::enumeration || enum_type->name == o.enum_type->name;
  }
  std::string to_string() const {
    return kind == TagKind::enumeration ? "enum " + enum_type->name : std::string(kind_name(kind));
  }
};

[[noreturn]] void ill_typed(const BoolExpr& e, const std::string& msg) {
  throw Error(ErrorCode::ill_typed_predicate, msg, e.position ? std::optional<std::size_t>(e.position) : std::nullopt);
}

class Checker {
 public:
  explicit Checker(const std::vector<DimensionPtr>& dims) : dims_(dims) {}

  const Dimension* dimension(const std::string& name) const {
    for (const auto& d : dims_) {
      if (d->name() == name) return d.get();
    }
    return nullptr;
  }

  bool is_label(const BoolExpr& e) const { return e.op == Op::name && !dimension(e.name); }

  // Rewrites an enum label into a literal of the given enum type.
  void resolve_label(BoolExpr& e, const Type& want) const {
    if (want.kind != TagKind::enumeration) ill_typed(e, "unknown name '" + e.name + "' in predicate");
    auto idx = want.enum_type->index_of(e.name);
    if (!idx) ill_typed(e, "'" + e.name + "' is not a label of enum " + want.enum_type->name);
    e = BoolExpr::literal(TagValue::enumerated(want.enum_type, *idx), e.position);
  }

  Type check(BoolExpr& e) const {
    switch (e.op) {
      case Op::literal: {
        const auto& v = *e.value;
        return Type{v.kind(), v.kind() == TagKind::enumeration ? v.as_enum().type : nullptr};
      }
      case Op::name: {
        const auto* d = dimension(e.name);
        if (!d) ill_typed(e, "unknown name '" + e.name + "' in predicate");
        return Type{d->kind(), d->type().enum_type};
      }
      case Op::negate:
        expect(e.args[0], TagKind::integer, "-");
        return Type{TagKind::integer, nullptr};
      case Op::logical_not:
        expect(e.args[0], TagKind::boolean, "not");
        return Type{TagKind::boolean, nullptr};
      case Op::add:
      case Op::subtract:
      case Op::multiply:
        expect(e.args[0], TagKind::integer, symbol(e.op));
        expect(e.args[1], TagKind::integer, symbol(e.op));
        return Type{TagKind::integer, nullptr};
      case Op::logical_and:
      case Op::logical_or:
        expect(e.args[0], TagKind::boolean, symbol(e.op));
        expect(e.args[1], TagKind::boolean, symbol(e.op));
        return Type{TagKind::boolean, nullptr};
      default: break;
    }
    // Comparisons: a bare label takes the type of the other side.
    auto& lhs = e.args[0];
    auto& rhs = e.args[1];
    if (is_label(lhs) && is_label(rhs)) ill_typed(e, "comparison between two unknown names");
    if (is_label(lhs)) resolve_label(lhs, check(rhs));
    if (is_label(rhs)) resolve_label(rhs, check(lhs));
    const Type a = check(lhs);
    const Type b = check(rhs);
    if (!(a == b)) {
      ill_typed(e, std::string("cannot compare ") + a.to_string() + " with " + b.to_string());
    }
    return Type{TagKind::boolean, nullptr};
  }

 private:
  void expect(BoolExpr& arg, TagKind kind, const std::string& op) const {
    const Type t = check(arg);
    if (t.kind != kind) {
      ill_typed(arg, "operator " + op + " needs " + std::string(kind_name(kind)) + " operands, got " + t.to_string());
    }
  }

  const std::vector<DimensionPtr>& dims_;
};

TagValue evaluate(const BoolExpr& e, const Context& c) {
  switch (e.op) {
    case Op::literal: return *e.value;
    case Op::name: return *c.tag_of(e.name);
    case Op::negate: return TagValue::integer(-evaluate(e.args[0], c).as_integer());
    case Op::logical_not: return TagValue::boolean(!evaluate(e.args[0], c).as_boolean());
    case Op::logical_and:
      return TagValue::boolean(evaluate(e.args[0], c).as_boolean() && evaluate(e.args[1], c).as_boolean());
    case Op::logical_or:
      return TagValue::boolean(evaluate(e.args[0], c).as_boolean() || evaluate(e.args[1], c).as_boolean());
    default: break;
  }
  const TagValue a = evaluate(e.args[0], c);
  const TagValue b = evaluate(e.args[1], c);
  switch (e.op) {
    case Op::add: return TagValue::integer(a.as_integer() + b.as_integer());
    case Op::subtract: return TagValue::integer(a.as_integer() - b.as_integer());
    case Op::multiply: return TagValue::integer(a.as_integer() * b.as_integer());
    case Op::equal: return TagValue::boolean(a == b);
    case Op::not_equal: return TagValue::boolean(a != b);
    case Op::less: return TagValue::boolean(a < b);
    case Op::less_equal: return TagValue::boolean(a <= b);
    case Op::greater: return TagValue::boolean(a > b);
    case Op::greater_equal: return TagValue::boolean(a >= b);
    default: break;
  }
  return TagValue::boolean(false);
}

void print(const BoolExpr& e, std::string& out) {
  auto operand = [&](const BoolExpr& arg, bool parens) {
    if (parens) out += '(';
    print(arg, out);
    if (parens) out += ')';
  };
  switch (e.op) {
    case Op::literal: out += e.value->to_string(); return;
    case Op::name: out += e.name; return;
    case Op::negate:
      out += '-';
      operand(e.args[0], strength(e.args[0].op) < strength(e.op));
      return;
    case Op::logical_not:
      out += "not ";
      operand(e.args[0], strength(e.args[0].op) < strength(e.op));
      return;
    default: break;
  }
  // Binary operators associate to the left; comparisons do not chain.
  const int s = strength(e.op);
  const bool comparison = is_comparison(e.op);
  operand(e.args[0], strength(e.args[0].op) < s || (comparison && strength(e.args[0].op) == s));
  out += ' ';
  out += symbol(e.op);
  out += ' ';
  operand(e.args[1], strength(e.args[1].op) <= s);
}

}  // namespace

std::string to_string(const BoolExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool operator==(const Box& a, const Box& b) {
  if (a.dims_.size() != b.dims_.size() || !(a.predicate_ == b.predicate_)) return false;
  for (std::size_t i = 0; i < a.dims_.size(); ++i) {
    if (a.dims_[i]->name() != b.dims_[i]->name()) return false;
  }
  return true;
}

DimSet Box::dim_set() const {
  DimSet out;
  for (const auto& d : dims_) out.insert(d->name());
  return out;
}

Box box_make(std::vector<DimensionPtr> dims, BoolExpr predicate) {
  if (dims.empty()) throw Error(ErrorCode::syntax_error, "Box needs at least one dimension");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (dims[i]->name() == dims[j]->name()) {
        throw Error(ErrorCode::syntax_error, "dimension " + dims[i]->name() + " listed twice in Box");
      }
    }
  }
  const Checker checker(dims);
  if (checker.check(predicate).kind != TagKind::boolean) {
    ill_typed(predicate, "Box predicate must be boolean");
  }
  return Box(std::move(dims), std::move(predicate));
}

bool box_contains(const Box& box, const Context& c) {
  if (!is_simple(c)) throw Error(ErrorCode::non_simple_operand, "Box membership needs a simple context");
  if (dims(c) != box.dim_set()) return false;
  for (const auto& m : c) {
    if (!m.dimension->type().accepts(m.tag)) return false;
  }
  return evaluate(box.predicate(), c).as_boolean();
}

ContextSet box_enumerate(const Box& box) {
  std::size_t total = 1;
  for (const auto& d : box.dims()) {
    if (!d->domain()) {
      throw Error(ErrorCode::unbounded_box, "dimension " + d->name() + " has no finite domain to enumerate");
    }
    total *= d->domain()->size();
    if (total > max_range_result) {
      throw Error(ErrorCode::range_too_large, "Box has more than " + std::to_string(max_range_result) + " candidates");
    }
  }
  std::vector<Context> members;
  if (total == 0) return ContextSet();
  const auto& dimlist = box.dims();
  std::vector<std::size_t> index(dimlist.size(), 0);
  while (true) {
    std::vector<MicroContext> entries;
    for (std::size_t i = 0; i < dimlist.size(); ++i) {
      entries.push_back(MicroContext{dimlist[i], (*dimlist[i]->domain())[index[i]]});
    }
    Context c(std::move(entries));
    if (evaluate(box.predicate(), c).as_boolean()) members.push_back(std::move(c));
    std::size_t pos = 0;
    while (pos < dimlist.size() && ++index[pos] == dimlist[pos]->domain()->size()) index[pos++] = 0;
    if (pos == dimlist.size()) break;
  }
  return ContextSet(std::move(members));
}

std::string to_string(const Box& box) {
  std::string out = "Box[";
  for (std::size_t i = 0; i < box.dims().size(); ++i) {
    if (i) out += ',';
    out += box.dims()[i]->name();
  }
  return out + " | " + to_string(box.predicate()) + "]";
}

}  // namespace ctxcalc
