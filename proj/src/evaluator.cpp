#include "ctxcalc/evaluator.hpp"

#include "ctxcalc/context_ops.hpp"
#include "ctxcalc/errors.hpp"
#include "ctxcalc/set_ops.hpp"

namespace ctxcalc {

std::string_view kind_name(ValueKind kind) noexcept {
  switch (kind) {
    case ValueKind::context: return "context";
    case ValueKind::context_set: return "context_set";
    case ValueKind::dimset: return "dimset";
    case ValueKind::box: return "box";
    case ValueKind::boolean: return "bool";
  }
  return "?";
}

ValueKind kind_of(const Value& v) noexcept { return static_cast<ValueKind>(v.index()); }

std::string to_string(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return to_string(x);
        }
      },
      v);
}

void Environment::bind(const std::string& name, Value value) {
  if (!is_identifier(name)) throw Error(ErrorCode::invalid_name, "invalid name '" + name + "'");
  if (ctxcalc::kind_of(value) == ValueKind::boolean) throw Error(ErrorCode::kind_mismatch, "a boolean cannot be bound to a name");
  bindings_.insert_or_assign(name, std::move(value));
}

const Value* Environment::find(std::string_view name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

const Value& Environment::lookup(std::string_view name, std::size_t position) const {
  if (const auto* v = find(name)) return *v;
  throw Error(ErrorCode::unbound_variable, "unbound name '" + std::string(name) + "'",
              position ? std::optional<std::size_t>(position) : std::nullopt);
}

std::optional<ValueKind> Environment::kind_of(std::string_view name) const {
  if (const auto* v = find(name)) return ctxcalc::kind_of(*v);
  return std::nullopt;
}

SetNamePredicate Environment::set_names() const {
  return [this](std::string_view name) {
    const auto k = kind_of(name);
    return k == ValueKind::context_set || k == ValueKind::box;
  };
}

TagValue resolve_tag(const Dimension& dim, const RawTag& raw) {
  auto mismatch = [&]() -> Error {
    return Error(ErrorCode::tag_type_mismatch, "tag " + to_string(raw) + " is not of type " + dim.type().to_string() +
                                                   " required by dimension " + dim.name());
  };
  std::optional<TagValue> tag;
  switch (raw.kind) {
    case RawTag::Kind::integer:
      if (dim.kind() != TagKind::integer) throw mismatch();
      tag = TagValue::integer(Integer(raw.text));
      break;
    case RawTag::Kind::string:
      if (dim.kind() != TagKind::string) throw mismatch();
      tag = TagValue::string(raw.text);
      break;
    case RawTag::Kind::word:
      if (dim.kind() == TagKind::boolean && (raw.text == "true" || raw.text == "false")) {
        tag = TagValue::boolean(raw.text == "true");
      } else if (dim.kind() == TagKind::enumeration) {
        const auto idx = dim.type().enum_type->index_of(raw.text);
        if (!idx) throw mismatch();
        tag = TagValue::enumerated(dim.type().enum_type, *idx);
      } else {
        throw mismatch();
      }
      break;
  }
  check_tag(dim, *tag);
  return *tag;
}

Context resolve_literal(const DimensionRegistry& registry, const ContextLiteral& lit) {
  std::vector<MicroContext> entries;
  entries.reserve(lit.pairs.size());
  for (const auto& [name, raw] : lit.pairs) {
    auto dim = registry.lookup(name);
    TagValue tag = resolve_tag(*dim, raw);
    entries.push_back(MicroContext{std::move(dim), std::move(tag)});
  }
  return Context(std::move(entries));
}

namespace {

class Evaluator {
 public:
  Evaluator(const Environment& env, ChoiceRng& rng) : env_(env), rng_(rng) {}

  Value eval(const Expr& e) {
    try {
      return eval_node(e);
    } catch (const Error& err) {
      if (err.position()) throw;
      throw Error(err.code(), err.what(), e.position);
    }
  }

 private:
  [[noreturn]] void mismatch(const Expr& e, const std::string& want, const Value& got) {
    throw Error(ErrorCode::kind_mismatch,
                std::string(op_name(e.op)) + " expects " + want + ", got " + std::string(kind_name(kind_of(got))),
                e.position);
  }

  // Boxes behave as the set they denote wherever a set is expected.
  static std::optional<ContextSet> as_set(const Value& v) {
    if (const auto* s = std::get_if<ContextSet>(&v)) return *s;
    if (const auto* b = std::get_if<Box>(&v)) return box_enumerate(*b);
    return std::nullopt;
  }

  DimSet eval_dimset(const Expr& e) {
    if (e.op == ExprOp::dimset_literal) {
      for (const auto& n : e.dim_names) env_.registry().lookup(n);
      return DimSet(e.dim_names.begin(), e.dim_names.end());
    }
    // A name bound to a dimension set, or else a single registered dimension.
    if (const auto* v = env_.find(e.name)) {
      if (const auto* d = std::get_if<DimSet>(v)) return *d;
      mismatch(e, "a dimension set", *v);
    }
    if (env_.registry().contains(e.name)) return DimSet{e.name};
    throw Error(ErrorCode::unbound_variable, "unbound name '" + e.name + "'", e.position);
  }

  Value eval_node(const Expr& e) {
    switch (e.op) {
      case ExprOp::variable: return env_.lookup(e.name, e.position);
      case ExprOp::context_literal: return resolve_literal(env_.registry(), e.literals.front());
      case ExprOp::set_literal: {
        std::vector<Context> members;
        for (const auto& lit : e.literals) members.push_back(resolve_literal(env_.registry(), lit));
        return ContextSet(std::move(members));
      }
      case ExprOp::empty_set: return ContextSet();
      case ExprOp::dimset_literal: return eval_dimset(e);
      case ExprOp::box_literal: {
        std::vector<DimensionPtr> dims;
        for (const auto& n : e.dim_names) dims.push_back(env_.registry().lookup(n));
        return box_make(std::move(dims), e.predicate);
      }
      case ExprOp::projection:
      case ExprOp::hiding: {
        const Value lhs = eval(e.operands[0]);
        const DimSet d = eval_dimset(e.operands[1]);
        const bool project = e.op == ExprOp::projection;
        if (const auto* c = std::get_if<Context>(&lhs)) return project ? projection(*c, d) : hiding(*c, d);
        if (auto s = as_set(lhs)) return project ? lift_projection(*s, d) : lift_hiding(*s, d);
        mismatch(e, "a context or context set", lhs);
      }
      case ExprOp::substitution: {
        const Value lhs = eval(e.operands[0]);
        const Value rhs = eval(e.operands[1]);
        const auto* s = std::get_if<Context>(&rhs);
        if (!s) mismatch(e, "a simple context on the right", rhs);
        if (const auto* c = std::get_if<Context>(&lhs)) return substitution(*c, *s);
        if (auto set = as_set(lhs)) {
          if (!is_micro(*s)) {
            throw Error(ErrorCode::kind_mismatch, "substitution into a context set needs a single (dimension, tag) pair",
                        e.position);
          }
          const auto& m = s->entries().front();
          return lift_substitution(*set, m.dimension, m.tag);
        }
        mismatch(e, "a context or context set on the left", lhs);
      }
      case ExprOp::set_substitution: {
        const Value lhs = eval(e.operands[0]);
        auto set = as_set(lhs);
        if (!set) mismatch(e, "a context set", lhs);
        const auto dim = env_.registry().lookup(e.name);
        return lift_substitution(*set, dim, resolve_tag(*dim, e.tag));
      }
      case ExprOp::choice: return eval_choice(e);
      case ExprOp::conjunction:
      case ExprOp::disjunction: {
        auto [a, b] = contexts(e);
        return e.op == ExprOp::conjunction ? conjunction(a, b) : disjunction(a, b);
      }
      case ExprOp::override_op:
      case ExprOp::difference: {
        const Value lhs = eval(e.operands[0]);
        const Value rhs = eval(e.operands[1]);
        const auto* a = std::get_if<Context>(&lhs);
        const auto* b = std::get_if<Context>(&rhs);
        const bool over = e.op == ExprOp::override_op;
        if (a && b) return over ? override_with(*a, *b) : difference(*a, *b);
        auto s1 = as_set(lhs);
        auto s2 = as_set(rhs);
        if (s1 && s2) return over ? lift_override(*s1, *s2) : lift_difference(*s1, *s2);
        mismatch(e, "two contexts or two context sets", s1 ? rhs : lhs);
      }
      case ExprOp::undirected_range:
      case ExprOp::directed_range: {
        auto [a, b] = contexts(e);
        return e.op == ExprOp::undirected_range ? undirected_range(a, b) : directed_range(a, b);
      }
      case ExprOp::join:
      case ExprOp::set_intersection:
      case ExprOp::set_union: {
        auto [s1, s2] = sets(e);
        if (e.op == ExprOp::join) return join(s1, s2);
        if (e.op == ExprOp::set_intersection) return set_intersection(s1, s2);
        return set_union(s1, s2);
      }
      case ExprOp::equal:
      case ExprOp::subset:
      case ExprOp::superset: {
        auto [a, b] = contexts(e);
        const Containment r = compare(a, b);
        if (e.op == ExprOp::equal) return r == Containment::equal;
        if (e.op == ExprOp::subset) return r == Containment::equal || r == Containment::subset;
        return r == Containment::equal || r == Containment::superset;
      }
    }
    throw Error(ErrorCode::syntax_error, "unsupported expression", e.position);
  }

  std::pair<Context, Context> contexts(const Expr& e) {
    Value lhs = eval(e.operands[0]);
    Value rhs = eval(e.operands[1]);
    auto* a = std::get_if<Context>(&lhs);
    auto* b = std::get_if<Context>(&rhs);
    if (!a) mismatch(e, "context operands", lhs);
    if (!b) mismatch(e, "context operands", rhs);
    return {std::move(*a), std::move(*b)};
  }

  std::pair<ContextSet, ContextSet> sets(const Expr& e) {
    const Value lhs = eval(e.operands[0]);
    const Value rhs = eval(e.operands[1]);
    auto s1 = as_set(lhs);
    auto s2 = as_set(rhs);
    if (!s1) mismatch(e, "context set operands", lhs);
    if (!s2) mismatch(e, "context set operands", rhs);
    return {std::move(*s1), std::move(*s2)};
  }

  // Every alternative is evaluated (left to right) so kinds can be checked;
  // then one draw from the generator selects the result.
  Value eval_choice(const Expr& e) {
    std::vector<Value> alternatives;
    for (const auto& operand : e.operands) alternatives.push_back(eval(operand));
    if (std::holds_alternative<Context>(alternatives.front())) {
      std::vector<Context> candidates;
      for (auto& v : alternatives) {
        auto* c = std::get_if<Context>(&v);
        if (!c) mismatch(e, "alternatives of one kind", v);
        candidates.push_back(std::move(*c));
      }
      return choice(candidates, rng_);
    }
    std::vector<ContextSet> candidates;
    for (auto& v : alternatives) {
      auto s = as_set(v);
      if (!s) mismatch(e, "contexts or context sets", v);
      candidates.push_back(std::move(*s));
    }
    if (candidates.size() == 2) return lift_choice(candidates[0], candidates[1], rng_);
    return candidates[rng_.pick(candidates.size())];
  }

  const Environment& env_;
  ChoiceRng& rng_;
};

}  // namespace

Value evaluate(const Expr& e, const Environment& env, ChoiceRng& rng) { return Evaluator(env, rng).eval(e); }

Value evaluate(const Expr& e, const Environment& env) {
  ChoiceRng rng(env.seed());
  return evaluate(e, env, rng);
}

Value evaluate_text(std::string_view text, const Environment& env, ChoiceRng& rng) {
  const auto parsed = parse_expression(text, env.set_names());
  return evaluate(parsed.ast, env, rng);
}

}  // namespace ctxcalc
