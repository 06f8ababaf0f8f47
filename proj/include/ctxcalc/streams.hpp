#pragma once

#include "ctxcalc/lexer.hpp"
#include "ctxcalc/tag_value.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace ctxcalc::streams {

inline constexpr std::string_view default_dimension = "time";
inline constexpr std::uint64_t default_budget = 1'000'000;

// Integer, boolean, or nil (undefined).
class StreamValue {
 public:
  StreamValue() = default;  // nil
  static StreamValue nil() { return StreamValue(); }
  static StreamValue integer(Integer v) { return StreamValue(Storage(std::in_place_index<1>, std::move(v))); }
  static StreamValue boolean(bool v) { return StreamValue(Storage(std::in_place_index<2>, v)); }

  bool is_nil() const noexcept { return value_.index() == 0; }
  bool is_integer() const noexcept { return value_.index() == 1; }
  bool is_boolean() const noexcept { return value_.index() == 2; }
  const Integer& as_integer() const { return std::get<1>(value_); }
  bool as_boolean() const { return std::get<2>(value_); }

  // Booleans print as 1/0, nil as "nil".
  std::string to_string() const;

  friend bool operator==(const StreamValue&, const StreamValue&) = default;

 private:
  using Storage = std::variant<std::monostate, Integer, bool>;
  explicit StreamValue(Storage v) : value_(std::move(v)) {}
  Storage value_;
};

// Current position along each dimension; unmentioned dimensions are at 0.
// Zero entries are never stored, so equal positions compare equal.
class EvaluationContext {
 public:
  EvaluationContext() = default;
  EvaluationContext(std::initializer_list<std::pair<const std::string, std::uint64_t>> tags);

  std::uint64_t get(std::string_view dim) const;
  EvaluationContext with(std::string_view dim, std::uint64_t tag) const;
  const std::map<std::string, std::uint64_t, std::less<>>& tags() const noexcept { return tags_; }

  friend bool operator==(const EvaluationContext&, const EvaluationContext&) = default;
  friend auto operator<=>(const EvaluationContext&, const EvaluationContext&) = default;

 private:
  std::map<std::string, std::uint64_t, std::less<>> tags_;
};

using NodeId = std::uint32_t;

enum class StreamOp {
  constant,
  literal,  // finite prefix along `dim`, nil afterwards
  ref,
  unary,
  binary,
  first,
  next,  // `steps` positions ahead
  prev,
  fby,
  wvr,
  upon,
  at,     // args[0] @.dim args[1]
  query,  // #.dim
  if_then_else,
};

enum class PointOp { negate, logical_not, add, subtract, multiply, divide, modulo,
                     equal, not_equal, less, less_equal, greater, greater_equal, logical_and, logical_or };

struct StreamNode {
  StreamOp op = StreamOp::constant;
  PointOp point = PointOp::add;
  std::string dim;
  std::uint64_t steps = 0;
  StreamValue constant;
  std::vector<StreamValue> items;
  std::string name;
  std::vector<NodeId> args;
};

// Hash-consed store of stream expressions. Structurally equal expressions
// share one id, so an id names a stream. Ids are stable: nodes are only
// ever appended.
class StreamGraph {
 public:
  NodeId constant(StreamValue v);
  NodeId literal(std::vector<StreamValue> items, std::string dim = std::string(default_dimension));
  NodeId ref(std::string name);
  NodeId unary(PointOp op, NodeId arg);
  NodeId binary(PointOp op, NodeId lhs, NodeId rhs);
  NodeId first(NodeId arg, std::string dim = std::string(default_dimension));
  NodeId next(NodeId arg, std::string dim = std::string(default_dimension));
  NodeId prev(NodeId arg, std::string dim = std::string(default_dimension));
  NodeId fby(NodeId lhs, NodeId rhs, std::string dim = std::string(default_dimension));
  NodeId wvr(NodeId lhs, NodeId rhs, std::string dim = std::string(default_dimension));
  // X asa Y is built as first (X wvr Y).
  NodeId asa(NodeId lhs, NodeId rhs, std::string dim = std::string(default_dimension));
  NodeId upon(NodeId lhs, NodeId rhs, std::string dim = std::string(default_dimension));
  NodeId at(NodeId lhs, std::string dim, NodeId rhs);
  NodeId query(std::string dim);
  NodeId if_then_else(NodeId cond, NodeId then_branch, NodeId else_branch);

  const StreamNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }

  // Names referenced anywhere below id.
  std::vector<std::string> references(NodeId id) const;

 private:
  NodeId intern(StreamNode n);

  std::vector<StreamNode> nodes_;
  std::unordered_map<std::string, NodeId> index_;
};

// Named stream equations over one graph. Recursion is allowed.
class EquationSet {
 public:
  EquationSet() : graph_(std::make_shared<StreamGraph>()) {}
  explicit EquationSet(std::shared_ptr<const StreamGraph> graph) : graph_(std::move(graph)) {}

  // Adds equations. Throws DuplicateName if a name is already defined (or
  // repeated), UnresolvedReference if any equation mentions an undefined name.
  EquationSet define(const std::vector<std::pair<std::string, NodeId>>& equations) const;

  std::optional<NodeId> find(std::string_view name) const;
  // Throws UnresolvedReference.
  NodeId root(std::string_view name) const;
  const std::map<std::string, NodeId, std::less<>>& equations() const noexcept { return equations_; }
  const StreamGraph& graph() const noexcept { return *graph_; }

  // Throws UnresolvedReference if expression id mentions an undefined name.
  void check_references(NodeId id) const;

 private:
  std::shared_ptr<const StreamGraph> graph_;
  std::map<std::string, NodeId, std::less<>> equations_;
};

// Validates and returns an equation set over the given graph.
EquationSet define_streams(std::shared_ptr<const StreamGraph> graph,
                           const std::vector<std::pair<std::string, NodeId>>& equations);

// A demand: stream id, the two offsets carried by wvr/upon unfoldings, and
// the evaluation context.
struct DemandKey {
  NodeId node = 0;
  std::uint64_t offset_a = 0;
  std::uint64_t offset_b = 0;
  EvaluationContext context;

  friend bool operator==(const DemandKey&, const DemandKey&) = default;
};

struct DemandKeyHash {
  std::size_t operator()(const DemandKey& k) const noexcept;
};

// Memo cache for eduction. Insertion is atomic per key; racing writers of
// one key store identical values.
class Warehouse {
 public:
  std::optional<StreamValue> find(const DemandKey& key) const;
  void store(const DemandKey& key, const StreamValue& value);
  std::size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<DemandKey, StreamValue, DemandKeyHash> values_;
};

struct EvalStats {
  std::uint64_t demands = 0;  // reduction steps not served from the warehouse
};

// Demand-driven evaluation of expr at ctx. warehouse may be null (no
// memoization). Each call is one query with its own budget of reduction
// steps. Throws DemandExhausted when the budget (or the nesting limit) is
// hit, KindMismatch on ill-typed operands, UnresolvedReference.
StreamValue eval(NodeId expr, const EvaluationContext& ctx, const EquationSet& eqs, Warehouse* warehouse,
                 std::uint64_t budget = default_budget, EvalStats* stats = nullptr);

// [expr @ base[dim <- t] for t in 0..count)
std::vector<StreamValue> eval_prefix(NodeId expr, std::string_view dim, std::size_t count, const EquationSet& eqs,
                                     Warehouse* warehouse, std::uint64_t budget = default_budget,
                                     const EvaluationContext& base = {}, EvalStats* stats = nullptr);
std::vector<StreamValue> eval_prefix(std::string_view name, std::string_view dim, std::size_t count,
                                     const EquationSet& eqs, Warehouse* warehouse,
                                     std::uint64_t budget = default_budget);

// Text syntax. Equations: `A = [1,2,3]; C = A fby B`. Expressions support
// first/next/prev/fby/wvr/asa/upon with an optional `.dim` suffix, `X @.d Y`,
// `#.d`, if/then/else, + - * / %, comparisons, and/or/not, integer, true,
// false and nil constants, and `[v, ...]` literals (optionally `[...].d`).
NodeId parse_stream_expr(std::string_view text, StreamGraph& graph);
std::vector<std::pair<std::string, NodeId>> parse_equations(std::string_view text, StreamGraph& graph);

// Parses one expression starting at pos and leaves pos on the first token
// that cannot continue it.
NodeId parse_stream_expr(std::span<const Token> tokens, std::size_t& pos, StreamGraph& graph);

}  // namespace ctxcalc::streams
