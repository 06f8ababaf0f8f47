#pragma once

#include "ctxcalc/context.hpp"
#include "ctxcalc/context_set.hpp"
#include "ctxcalc/dimension.hpp"

#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testing {

using ctxcalc::Context;
using ctxcalc::ContextSet;
using ctxcalc::DimensionRegistry;
using ctxcalc::TagValue;

// Integer dimensions named by the given letters, unbounded.
inline DimensionRegistry int_registry(std::string_view names = "abcdefwxyz") {
  DimensionRegistry reg;
  for (char n : names) reg.register_dimension(std::string(1, n), ctxcalc::TagType::of(ctxcalc::TagKind::integer));
  return reg;
}

inline Context ctx(const DimensionRegistry& reg, std::initializer_list<std::pair<const char*, int>> pairs) {
  std::vector<std::pair<std::string, TagValue>> v;
  for (const auto& [d, t] : pairs) v.emplace_back(d, TagValue::integer(t));
  return ctxcalc::make_context(reg, v);
}

inline ContextSet set(std::vector<Context> members) { return ContextSet(std::move(members)); }

inline ctxcalc::DimSet dimset(std::initializer_list<const char*> names) {
  ctxcalc::DimSet d;
  for (auto n : names) d.insert(n);
  return d;
}

// Random contexts over the first `pool` dimensions of an int_registry,
// tags 0..5, at most four distinct dimensions.
class Generator {
 public:
  explicit Generator(std::uint32_t seed, std::string pool = "abcd") : engine_(seed), pool_(std::move(pool)) {}

  int tag() { return uniform(0, 5); }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937& engine() { return engine_; }

  std::vector<std::string> dims_subset() {
    std::vector<std::string> out;
    for (char d : pool_) {
      if (coin()) out.emplace_back(1, d);
    }
    return out;
  }

  Context simple(const DimensionRegistry& reg) { return simple_over(reg, dims_subset()); }

  Context simple_over(const DimensionRegistry& reg, const std::vector<std::string>& dims) {
    std::vector<std::pair<std::string, TagValue>> v;
    for (const auto& d : dims) v.emplace_back(d, TagValue::integer(tag()));
    return ctxcalc::make_context(reg, v);
  }

  // May bind a dimension more than once.
  Context general(const DimensionRegistry& reg) {
    std::vector<std::pair<std::string, TagValue>> v;
    const int n = uniform(0, 5);
    for (int i = 0; i < n; ++i) {
      v.emplace_back(std::string(1, pool_[uniform(0, static_cast<int>(pool_.size()) - 1)]), TagValue::integer(tag()));
    }
    return ctxcalc::make_context(reg, v);
  }

  ctxcalc::DimSet dimset() {
    ctxcalc::DimSet out;
    for (auto& d : dims_subset()) out.insert(d);
    return out;
  }

  ContextSet simple_set(const DimensionRegistry& reg, int max_members = 4) {
    std::vector<Context> members;
    const int n = uniform(0, max_members);
    for (int i = 0; i < n; ++i) members.push_back(simple(reg));
    return ContextSet(std::move(members));
  }

 private:
  std::mt19937 engine_;
  std::string pool_;
};

}  // namespace testing
