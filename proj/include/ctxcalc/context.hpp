#pragma once

#include "ctxcalc/dimension.hpp"
#include "ctxcalc/tag_value.hpp"

#include <compare>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ctxcalc {

// One (dimension, tag) pair.
struct MicroContext {
  DimensionPtr dimension;
  TagValue tag;

  const std::string& dim() const noexcept { return dimension->name(); }

  friend bool operator==(const MicroContext& a, const MicroContext& b) {
    return a.dim() == b.dim() && a.tag == b.tag;
  }
  friend std::strong_ordering operator<=>(const MicroContext& a, const MicroContext& b) {
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    return a.tag <=> b.tag;
  }
};

// Validates the tag against the dimension.
MicroContext make_micro(DimensionPtr dim, TagValue tag);

// Dimensions are identified by their registered name.
using DimSet = std::set<std::string, std::less<>>;

// A finite relation between dimensions and tags. Entries are kept sorted by
// (dimension name, tag) with duplicates removed, so equal relations compare
// equal. The default-constructed context is Null.
class Context {
 public:
  Context() = default;
  // Entries must already be validated; they are sorted and deduplicated.
  explicit Context(std::vector<MicroContext> entries);

  const std::vector<MicroContext>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool contains(const MicroContext& m) const;
  bool has_dimension(std::string_view dim) const;
  // Tag bound to dim in a simple context; the first one otherwise.
  const TagValue* tag_of(std::string_view dim) const;

  friend bool operator==(const Context&, const Context&) = default;
  friend std::strong_ordering operator<=>(const Context& a, const Context& b);

 private:
  std::vector<MicroContext> entries_;
};

// Builds a context from named pairs. Throws UnknownDimension, TagTypeMismatch,
// TagOutsideDomain. Duplicate pairs collapse; the result may be non-simple.
Context make_context(const DimensionRegistry& registry,
                     std::span<const std::pair<std::string, TagValue>> pairs);
Context make_context(const DimensionRegistry& registry,
                     std::initializer_list<std::pair<std::string, TagValue>> pairs);

std::size_t degree(const Context& c);
DimSet dims(const Context& c);
std::vector<TagValue> tags(const Context& c);
bool is_simple(const Context& c);
bool is_micro(const Context& c);

enum class Containment { equal, subset, superset, incomparable };

std::string_view containment_name(Containment c) noexcept;
Containment compare(const Context& c1, const Context& c2);

// Canonical text: {(d,1),(e,4)}; Null prints as {}.
std::string to_string(const Context& c);
std::string to_string(const DimSet& d);

}  // namespace ctxcalc
