#include "ctxcalc/streams.hpp"

#include "ctxcalc/errors.hpp"

#include <functional>
#include <mutex>
#include <set>

namespace ctxcalc::streams {

std::string StreamValue::to_string() const {
  if (is_nil()) return "nil";
  if (is_boolean()) return as_boolean() ? "1" : "0";
  return as_integer().str();
}

EvaluationContext::EvaluationContext(std::initializer_list<std::pair<const std::string, std::uint64_t>> tags) {
  for (const auto& [d, t] : tags) {
    if (t != 0) tags_.insert_or_assign(d, t);
  }
}

std::uint64_t EvaluationContext::get(std::string_view dim) const {
  auto it = tags_.find(dim);
  return it == tags_.end() ? 0 : it->second;
}

EvaluationContext EvaluationContext::with(std::string_view dim, std::uint64_t tag) const {
  EvaluationContext out = *this;
  if (tag == 0) {
    if (auto it = out.tags_.find(dim); it != out.tags_.end()) out.tags_.erase(it);
  } else {
    out.tags_.insert_or_assign(std::string(dim), tag);
  }
  return out;
}

// ---- graph -------------------------------------------------------------------

NodeId StreamGraph::intern(StreamNode n) {
  std::string key = std::to_string(static_cast<int>(n.op)) + '|' + std::to_string(static_cast<int>(n.point)) + '|' +
                    n.dim + '|' + std::to_string(n.steps) + '|' + n.name + '|';
  auto value_key = [](const StreamValue& v) {
    return v.is_nil() ? std::string("n") : (v.is_boolean() ? std::string("b") : std::string("i")) + v.to_string();
  };
  if (n.op == StreamOp::constant) key += value_key(n.constant);
  for (const auto& v : n.items) key += value_key(v) + ',';
  key += '|';
  for (auto a : n.args) key += std::to_string(a) + ',';
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(key), id);
  return id;
}

NodeId StreamGraph::constant(StreamValue v) {
  StreamNode n;
  n.op = StreamOp::constant;
  n.constant = std::move(v);
  return intern(std::move(n));
}

NodeId StreamGraph::literal(std::vector<StreamValue> items, std::string dim) {
  StreamNode n;
  n.op = StreamOp::literal;
  n.items = std::move(items);
  n.dim = std::move(dim);
  return intern(std::move(n));
}

NodeId StreamGraph::ref(std::string name) {
  StreamNode n;
  n.op = StreamOp::ref;
  n.name = std::move(name);
  return intern(std::move(n));
}

NodeId StreamGraph::unary(PointOp op, NodeId arg) {
  StreamNode n;
  n.op = StreamOp::unary;
  n.point = op;
  n.args = {arg};
  return intern(std::move(n));
}

NodeId StreamGraph::binary(PointOp op, NodeId lhs, NodeId rhs) {
  StreamNode n;
  n.op = StreamOp::binary;
  n.point = op;
  n.args = {lhs, rhs};
  return intern(std::move(n));
}

namespace {

StreamNode temporal(StreamOp op, std::string dim, std::vector<NodeId> args) {
  StreamNode n;
  n.op = op;
  n.dim = std::move(dim);
  n.args = std::move(args);
  return n;
}

}  // namespace

NodeId StreamGraph::first(NodeId arg, std::string dim) {
  return intern(temporal(StreamOp::first, std::move(dim), {arg}));
}

NodeId StreamGraph::next(NodeId arg, std::string dim) {
  // next (next^k X) is next^(k+1) X.
  const StreamNode& inner = node(arg);
  if (inner.op == StreamOp::next && inner.dim == dim) {
    StreamNode n = inner;
    ++n.steps;
    return intern(std::move(n));
  }
  StreamNode n = temporal(StreamOp::next, std::move(dim), {arg});
  n.steps = 1;
  return intern(std::move(n));
}

NodeId StreamGraph::prev(NodeId arg, std::string dim) {
  return intern(temporal(StreamOp::prev, std::move(dim), {arg}));
}

NodeId StreamGraph::fby(NodeId lhs, NodeId rhs, std::string dim) {
  return intern(temporal(StreamOp::fby, std::move(dim), {lhs, rhs}));
}

NodeId StreamGraph::wvr(NodeId lhs, NodeId rhs, std::string dim) {
  return intern(temporal(StreamOp::wvr, std::move(dim), {lhs, rhs}));
}

NodeId StreamGraph::asa(NodeId lhs, NodeId rhs, std::string dim) {
  const NodeId w = wvr(lhs, rhs, dim);
  return first(w, std::move(dim));
}

NodeId StreamGraph::upon(NodeId lhs, NodeId rhs, std::string dim) {
  return intern(temporal(StreamOp::upon, std::move(dim), {lhs, rhs}));
}

NodeId StreamGraph::at(NodeId lhs, std::string dim, NodeId rhs) {
  return intern(temporal(StreamOp::at, std::move(dim), {lhs, rhs}));
}

NodeId StreamGraph::query(std::string dim) { return intern(temporal(StreamOp::query, std::move(dim), {})); }

NodeId StreamGraph::if_then_else(NodeId cond, NodeId then_branch, NodeId else_branch) {
  StreamNode n;
  n.op = StreamOp::if_then_else;
  n.args = {cond, then_branch, else_branch};
  return intern(std::move(n));
}

std::vector<std::string> StreamGraph::references(NodeId id) const {
  std::set<std::string> names;
  std::set<NodeId> seen;
  std::vector<NodeId> todo{id};
  while (!todo.empty()) {
    const NodeId cur = todo.back();
    todo.pop_back();
    if (!seen.insert(cur).second) continue;
    const auto& n = node(cur);
    if (n.op == StreamOp::ref) names.insert(n.name);
    todo.insert(todo.end(), n.args.begin(), n.args.end());
  }
  return {names.begin(), names.end()};
}

// ---- equations ---------------------------------------------------------------

EquationSet EquationSet::define(const std::vector<std::pair<std::string, NodeId>>& equations) const {
  EquationSet out = *this;
  for (const auto& [name, root] : equations) {
    if (!out.equations_.emplace(name, root).second) {
      throw Error(ErrorCode::duplicate_name, "stream " + name + " is already defined");
    }
  }
  for (const auto& [name, root] : equations) out.check_references(root);
  return out;
}

std::optional<NodeId> EquationSet::find(std::string_view name) const {
  auto it = equations_.find(name);
  if (it == equations_.end()) return std::nullopt;
  return it->second;
}

NodeId EquationSet::root(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorCode::unresolved_reference, "no stream named " + std::string(name));
}

void EquationSet::check_references(NodeId id) const {
  for (const auto& name : graph_->references(id)) {
    if (!equations_.count(name)) throw Error(ErrorCode::unresolved_reference, "no stream named " + name);
  }
}

EquationSet define_streams(std::shared_ptr<const StreamGraph> graph,
                           const std::vector<std::pair<std::string, NodeId>>& equations) {
  return EquationSet(std::move(graph)).define(equations);
}

// ---- warehouse ---------------------------------------------------------------

std::size_t DemandKeyHash::operator()(const DemandKey& k) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(k.node);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::uint64_t>{}(k.offset_a));
  mix(std::hash<std::uint64_t>{}(k.offset_b));
  for (const auto& [d, t] : k.context.tags()) {
    mix(std::hash<std::string>{}(d));
    mix(std::hash<std::uint64_t>{}(t));
  }
  return h;
}

std::optional<StreamValue> Warehouse::find(const DemandKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void Warehouse::store(const DemandKey& key, const StreamValue& value) {
  std::unique_lock lock(mutex_);
  values_.try_emplace(key, value);
}

std::size_t Warehouse::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

void Warehouse::clear() {
  std::unique_lock lock(mutex_);
  values_.clear();
}

// ---- eduction ----------------------------------------------------------------

namespace {

// Nested (non-tail) demands beyond this depth are refused rather than risk
// exhausting the native stack.
constexpr std::size_t max_nesting = 4000;

class Educer {
 public:
  Educer(const EquationSet& eqs, Warehouse* warehouse, std::uint64_t budget, EvalStats* stats)
      : eqs_(eqs), graph_(eqs.graph()), warehouse_(warehouse), budget_(budget), stats_(stats) {}

  // Tail positions are followed in a loop; every key visited on the way
  // shares the final value and is stored once it is known.
  StreamValue demand(DemandKey key) {
    if (++depth_ > max_nesting) {
      throw Error(ErrorCode::demand_exhausted, "demand nesting exceeded " + std::to_string(max_nesting));
    }
    std::vector<DemandKey> chain;
    StreamValue result;
    while (true) {
      if (warehouse_) {
        if (auto hit = warehouse_->find(key)) {
          result = std::move(*hit);
          break;
        }
      }
      if (++used_ > budget_) {
        throw Error(ErrorCode::demand_exhausted, "demand budget of " + std::to_string(budget_) + " exhausted");
      }
      if (stats_) ++stats_->demands;
      if (warehouse_) chain.push_back(key);
      Step step = reduce(key);
      if (step.value) {
        result = std::move(*step.value);
        break;
      }
      key = std::move(*step.next);
    }
    if (warehouse_) {
      for (const auto& k : chain) warehouse_->store(k, result);
    }
    --depth_;
    return result;
  }

 private:
  struct Step {
    std::optional<StreamValue> value;
    std::optional<DemandKey> next;
  };

  static Step done(StreamValue v) { return Step{std::move(v), std::nullopt}; }
  static Step go(NodeId node, EvaluationContext ctx, std::uint64_t a = 0, std::uint64_t b = 0) {
    return Step{std::nullopt, DemandKey{node, a, b, std::move(ctx)}};
  }

  StreamValue at(NodeId node, const EvaluationContext& ctx) { return demand(DemandKey{node, 0, 0, ctx}); }

  // nil for nil, otherwise the boolean; anything else is a kind error.
  std::optional<bool> condition(const StreamValue& v, const char* where) {
    if (v.is_nil()) return std::nullopt;
    if (!v.is_boolean()) {
      throw Error(ErrorCode::kind_mismatch, std::string(where) + " needs a boolean stream, got " + v.to_string());
    }
    return v.as_boolean();
  }

  Step reduce(const DemandKey& key) {
    const StreamNode& n = graph_.node(key.node);
    const EvaluationContext& ctx = key.context;
    const std::uint64_t t = n.dim.empty() ? 0 : ctx.get(n.dim);
    switch (n.op) {
      case StreamOp::constant: return done(n.constant);
      case StreamOp::literal: return done(t < n.items.size() ? n.items[t] : StreamValue::nil());
      case StreamOp::ref: return go(eqs_.root(n.name), ctx);
      case StreamOp::unary: return done(apply_unary(n.point, at(n.args[0], ctx)));
      case StreamOp::binary: {
        const StreamValue lhs = at(n.args[0], ctx);
        const StreamValue rhs = at(n.args[1], ctx);
        return done(apply_binary(n.point, lhs, rhs));
      }
      case StreamOp::first: return go(n.args[0], ctx.with(n.dim, 0));
      case StreamOp::next: return go(n.args[0], ctx.with(n.dim, t + n.steps));
      case StreamOp::prev:
        if (t == 0) return done(StreamValue::nil());
        return go(n.args[0], ctx.with(n.dim, t - 1));
      case StreamOp::fby:
        if (t == 0) return go(n.args[0], ctx);
        return go(n.args[1], ctx.with(n.dim, t - 1));
      case StreamOp::wvr: {
        // W_k = if first (next^k Y) then (next^k X) fby W_k+1 else W_k+1
        const std::uint64_t k = key.offset_a;
        const auto c = condition(at(n.args[1], ctx.with(n.dim, k)), "wvr");
        if (!c) return done(StreamValue::nil());
        if (!*c) return go(key.node, ctx, k + 1);
        if (t == 0) return go(n.args[0], ctx.with(n.dim, k));
        return go(key.node, ctx.with(n.dim, t - 1), k + 1);
      }
      case StreamOp::upon: {
        // U_a,b = (next^a X) fby (if first (next^b Y) then U_a+1,b+1 else U_a,b+1)
        const std::uint64_t a = key.offset_a;
        const std::uint64_t b = key.offset_b;
        if (t == 0) return go(n.args[0], ctx.with(n.dim, a));
        const EvaluationContext earlier = ctx.with(n.dim, t - 1);
        const auto c = condition(at(n.args[1], earlier.with(n.dim, b)), "upon");
        if (!c) return done(StreamValue::nil());
        return *c ? go(key.node, earlier, a + 1, b + 1) : go(key.node, earlier, a, b + 1);
      }
      case StreamOp::at: {
        const StreamValue where = at(n.args[1], ctx);
        if (where.is_nil()) return done(StreamValue::nil());
        if (!where.is_integer()) {
          throw Error(ErrorCode::kind_mismatch, "@." + n.dim + " needs an integer position, got " + where.to_string());
        }
        const Integer& pos = where.as_integer();
        if (pos < 0 || pos > Integer(std::numeric_limits<std::uint64_t>::max())) return done(StreamValue::nil());
        return go(n.args[0], ctx.with(n.dim, static_cast<std::uint64_t>(pos)));
      }
      case StreamOp::query: return done(StreamValue::integer(Integer(t)));
      case StreamOp::if_then_else: {
        const auto c = condition(at(n.args[0], ctx), "if");
        if (!c) return done(StreamValue::nil());
        return go(*c ? n.args[1] : n.args[2], ctx);
      }
    }
    return done(StreamValue::nil());
  }

  static StreamValue apply_unary(PointOp op, const StreamValue& v) {
    if (v.is_nil()) return v;
    if (op == PointOp::negate) {
      if (!v.is_integer()) throw Error(ErrorCode::kind_mismatch, "negation needs an integer");
      return StreamValue::integer(-v.as_integer());
    }
    if (!v.is_boolean()) throw Error(ErrorCode::kind_mismatch, "not needs a boolean");
    return StreamValue::boolean(!v.as_boolean());
  }

  static StreamValue apply_binary(PointOp op, const StreamValue& a, const StreamValue& b) {
    if (a.is_nil() || b.is_nil()) return StreamValue::nil();
    switch (op) {
      case PointOp::logical_and:
      case PointOp::logical_or:
        if (!a.is_boolean() || !b.is_boolean()) throw Error(ErrorCode::kind_mismatch, "and/or need booleans");
        return StreamValue::boolean(op == PointOp::logical_and ? a.as_boolean() && b.as_boolean()
                                                               : a.as_boolean() || b.as_boolean());
      case PointOp::equal: return StreamValue::boolean(same_kind(a, b) && a == b);
      case PointOp::not_equal: return StreamValue::boolean(!(same_kind(a, b) && a == b));
      default: break;
    }
    if (!a.is_integer() || !b.is_integer()) {
      throw Error(ErrorCode::kind_mismatch, "arithmetic and ordering need integers, got " + a.to_string() + " and " +
                                                b.to_string());
    }
    const Integer& x = a.as_integer();
    const Integer& y = b.as_integer();
    switch (op) {
      case PointOp::add: return StreamValue::integer(x + y);
      case PointOp::subtract: return StreamValue::integer(x - y);
      case PointOp::multiply: return StreamValue::integer(x * y);
      case PointOp::divide: return y == 0 ? StreamValue::nil() : StreamValue::integer(x / y);
      case PointOp::modulo: return y == 0 ? StreamValue::nil() : StreamValue::integer(x % y);
      case PointOp::less: return StreamValue::boolean(x < y);
      case PointOp::less_equal: return StreamValue::boolean(x <= y);
      case PointOp::greater: return StreamValue::boolean(x > y);
      case PointOp::greater_equal: return StreamValue::boolean(x >= y);
      default: break;
    }
    return StreamValue::nil();
  }

  static bool same_kind(const StreamValue& a, const StreamValue& b) {
    return a.is_integer() == b.is_integer() && a.is_boolean() == b.is_boolean();
  }

  const EquationSet& eqs_;
  const StreamGraph& graph_;
  Warehouse* warehouse_;
  std::uint64_t budget_;
  EvalStats* stats_;
  std::uint64_t used_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

StreamValue eval(NodeId expr, const EvaluationContext& ctx, const EquationSet& eqs, Warehouse* warehouse,
                 std::uint64_t budget, EvalStats* stats) {
  if (budget == 0) throw Error(ErrorCode::demand_exhausted, "demand budget must be positive");
  eqs.check_references(expr);
  return Educer(eqs, warehouse, budget, stats).demand(DemandKey{expr, 0, 0, ctx});
}

std::vector<StreamValue> eval_prefix(NodeId expr, std::string_view dim, std::size_t count, const EquationSet& eqs,
                                     Warehouse* warehouse, std::uint64_t budget, const EvaluationContext& base,
                                     EvalStats* stats) {
  std::vector<StreamValue> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    out.push_back(eval(expr, base.with(dim, t), eqs, warehouse, budget, stats));
  }
  return out;
}

std::vector<StreamValue> eval_prefix(std::string_view name, std::string_view dim, std::size_t count,
                                     const EquationSet& eqs, Warehouse* warehouse, std::uint64_t budget) {
  return eval_prefix(eqs.root(name), dim, count, eqs, warehouse, budget);
}

}  // namespace ctxcalc::streams
