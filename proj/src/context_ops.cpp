#include "ctxcalc/context_ops.hpp"

#include "ctxcalc/errors.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

namespace ctxcalc {

namespace {

void require_simple(const Context& c, const char* role) {
  if (!is_simple(c)) {
    throw Error(ErrorCode::non_simple_operand, std::string(role) + " operand " + to_string(c) + " is not simple");
  }
}

template <typename Pred>
Context filter(const Context& c, Pred keep) {
  std::vector<MicroContext> out;
  std::copy_if(c.begin(), c.end(), std::back_inserter(out), keep);
  return Context(std::move(out));
}

bool is_stepped(const Dimension& dim) {
  return dim.kind() == TagKind::integer || dim.kind() == TagKind::enumeration;
}

// Inclusive a..b, a <= b, in the dimension's own order.
void append_subrange(const Dimension& dim, const TagValue& a, const TagValue& b, std::set<TagValue>& out) {
  if (dim.domain()) {
    for (const auto& x : *dim.domain()) {
      if (!(x < a) && !(b < x)) out.insert(x);
    }
    return;
  }
  // Only integer dimensions can lack a domain.
  const Integer span = b.as_integer() - a.as_integer() + 1;
  if (span > Integer(max_range_result)) {
    throw Error(ErrorCode::range_too_large, "range " + a.to_string() + ".." + b.to_string() + " on " + dim.name() +
                                                " is too large to materialize");
  }
  for (Integer x = a.as_integer(); x <= b.as_integer(); ++x) out.insert(TagValue::integer(x));
}

enum class RangeMode { undirected, directed };

ContextSet range(const Context& c1, const Context& c2, RangeMode mode) {
  // Per-dimension tag sets after merging Y-sets that share a dimension.
  std::map<std::string, std::pair<DimensionPtr, std::set<TagValue>>> merged;
  DimSet processed;

  for (const auto& m1 : c1) {
    for (const auto& m2 : c2) {
      if (m1.dim() != m2.dim()) continue;
      if (!is_stepped(*m1.dimension)) {
        throw Error(ErrorCode::unordered_range_dimension,
                    "dimension " + m1.dim() + " of type " + m1.dimension->type().to_string() +
                        " cannot be used in a range");
      }
      processed.insert(m1.dim());
      const bool ordered = m1.tag < m2.tag;
      if (mode == RangeMode::directed && !ordered) continue;
      const TagValue& lo = ordered ? m1.tag : m2.tag;
      const TagValue& hi = ordered ? m2.tag : m1.tag;
      auto& slot = merged[m1.dim()];
      slot.first = m1.dimension;
      append_subrange(*m1.dimension, lo, hi, slot.second);
    }
  }

  const Context residue = disjunction(hiding(c1, processed), hiding(c2, processed));
  if (!is_simple(residue)) {
    throw Error(ErrorCode::non_simple_residue, "unshared entries " + to_string(residue) + " are not simple");
  }

  std::vector<std::pair<DimensionPtr, std::vector<TagValue>>> factors;
  std::size_t total = 1;
  for (auto& [name, slot] : merged) {
    factors.emplace_back(slot.first, std::vector<TagValue>(slot.second.begin(), slot.second.end()));
    total *= factors.back().second.size();
    if (total > max_range_result) {
      throw Error(ErrorCode::range_too_large, "range result exceeds " + std::to_string(max_range_result) + " contexts");
    }
  }

  // Odometer over the cartesian product; an empty family yields one empty tuple.
  std::vector<Context> members;
  members.reserve(total);
  std::vector<std::size_t> index(factors.size(), 0);
  while (true) {
    std::vector<MicroContext> entries(residue.begin(), residue.end());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      entries.push_back(MicroContext{factors[i].first, factors[i].second[index[i]]});
    }
    members.emplace_back(std::move(entries));
    std::size_t pos = 0;
    while (pos < factors.size() && ++index[pos] == factors[pos].second.size()) index[pos++] = 0;
    if (pos == factors.size()) break;
  }
  return ContextSet(std::move(members));
}

}  // namespace

Context override_with(const Context& c1, const Context& c2) {
  require_simple(c2, "right override");
  const DimSet hidden = dims(c2);
  std::vector<MicroContext> out;
  for (const auto& m : c1) {
    if (!hidden.count(m.dim())) out.push_back(m);
  }
  out.insert(out.end(), c2.begin(), c2.end());
  return Context(std::move(out));
}

Context difference(const Context& c1, const Context& c2) {
  return filter(c1, [&](const MicroContext& m) { return !c2.contains(m); });
}

Context conjunction(const Context& c1, const Context& c2) {
  return filter(c1, [&](const MicroContext& m) { return c2.contains(m); });
}

Context disjunction(const Context& c1, const Context& c2) {
  std::vector<MicroContext> out(c1.begin(), c1.end());
  out.insert(out.end(), c2.begin(), c2.end());
  return Context(std::move(out));
}

Context choice(std::span<const Context> candidates, ChoiceRng& rng) {
  if (candidates.empty()) throw Error(ErrorCode::empty_choice, "choice needs at least one candidate");
  return candidates[rng.pick(candidates.size())];
}

Context projection(const Context& c, const DimSet& d) {
  return filter(c, [&](const MicroContext& m) { return d.count(m.dim()) != 0; });
}

Context hiding(const Context& c, const DimSet& d) {
  return filter(c, [&](const MicroContext& m) { return d.count(m.dim()) == 0; });
}

Context substitution(const Context& c, const Context& s) {
  require_simple(s, "substitution");
  return disjunction(hiding(c, dims(s)), projection(s, dims(c)));
}

ContextSet undirected_range(const Context& c1, const Context& c2) { return range(c1, c2, RangeMode::undirected); }

ContextSet directed_range(const Context& c1, const Context& c2) {
  require_simple(c2, "right directed range");
  return range(c1, c2, RangeMode::directed);
}

}  // namespace ctxcalc
