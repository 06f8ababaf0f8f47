#include "ctxcalc/set_ops.hpp"

#include "ctxcalc/context_ops.hpp"
#include "ctxcalc/errors.hpp"

#include <algorithm>
#include <iterator>

namespace ctxcalc {

namespace {

template <typename F>
ContextSet map_members(const ContextSet& s, F f) {
  std::vector<Context> out;
  out.reserve(s.size());
  for (const auto& c : s) out.push_back(f(c));
  return ContextSet(std::move(out));
}

template <typename F>
ContextSet all_pairs(const ContextSet& s1, const ContextSet& s2, F f) {
  std::vector<Context> out;
  out.reserve(s1.size() * s2.size());
  for (const auto& c1 : s1) {
    for (const auto& c2 : s2) f(c1, c2, out);
  }
  return ContextSet(std::move(out));
}

DimSet shared_dims(const ContextSet& s1, const ContextSet& s2) {
  const DimSet d1 = dims(s1);
  const DimSet d2 = dims(s2);
  DimSet out;
  std::set_intersection(d1.begin(), d1.end(), d2.begin(), d2.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

ContextSet lift_projection(const ContextSet& s, const DimSet& d) {
  return map_members(s, [&](const Context& c) { return projection(c, d); });
}

ContextSet lift_hiding(const ContextSet& s, const DimSet& d) {
  return map_members(s, [&](const Context& c) { return hiding(c, d); });
}

ContextSet lift_substitution(const ContextSet& s, const DimensionPtr& dim, const TagValue& tag) {
  const Context micro({make_micro(dim, tag)});
  return map_members(s, [&](const Context& c) { return substitution(c, micro); });
}

ContextSet lift_choice(const ContextSet& s1, const ContextSet& s2, ChoiceRng& rng) {
  return rng.pick(2) == 0 ? s1 : s2;
}

ContextSet lift_override(const ContextSet& s1, const ContextSet& s2) {
  return all_pairs(s1, s2, [](const Context& a, const Context& b, std::vector<Context>& out) {
    out.push_back(override_with(a, b));
  });
}

ContextSet lift_difference(const ContextSet& s1, const ContextSet& s2) {
  return all_pairs(s1, s2, [](const Context& a, const Context& b, std::vector<Context>& out) {
    out.push_back(difference(a, b));
  });
}

ContextSet join(const ContextSet& s1, const ContextSet& s2) {
  const DimSet shared = shared_dims(s1, s2);
  return all_pairs(s1, s2, [&](const Context& a, const Context& b, std::vector<Context>& out) {
    if (projection(a, shared) == projection(b, shared)) out.push_back(disjunction(a, b));
  });
}

ContextSet set_intersection(const ContextSet& s1, const ContextSet& s2) {
  return all_pairs(s1, s2, [](const Context& a, const Context& b, std::vector<Context>& out) {
    out.push_back(conjunction(a, b));
  });
}

ContextSet set_union(const ContextSet& s1, const ContextSet& s2) {
  const DimSet shared = shared_dims(s1, s2);
  return all_pairs(s1, s2, [&](const Context& a, const Context& b, std::vector<Context>& out) {
    for (auto c : {disjunction(a, hiding(b, shared)), disjunction(b, hiding(a, shared))}) {
      // Dimensions on which a and b could clash are all shared, so this holds
      // for any pair of simple members.
      if (!is_simple(c)) {
        throw Error(ErrorCode::non_simple_residue, "union member " + to_string(c) + " is not simple");
      }
      out.push_back(std::move(c));
    }
  });
}

}  // namespace ctxcalc
