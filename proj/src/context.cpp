#include "ctxcalc/context.hpp"

#include "ctxcalc/errors.hpp"

#include <algorithm>

namespace ctxcalc {

MicroContext make_micro(DimensionPtr dim, TagValue tag) {
  check_tag(*dim, tag);
  return MicroContext{std::move(dim), std::move(tag)};
}

Context::Context(std::vector<MicroContext> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

bool Context::contains(const MicroContext& m) const {
  return std::binary_search(entries_.begin(), entries_.end(), m);
}

bool Context::has_dimension(std::string_view dim) const { return tag_of(dim) != nullptr; }

const TagValue* Context::tag_of(std::string_view dim) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), dim,
                             [](const MicroContext& m, std::string_view d) { return m.dim() < d; });
  if (it == entries_.end() || it->dim() != dim) return nullptr;
  return &it->tag;
}

std::strong_ordering operator<=>(const Context& a, const Context& b) {
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                b.entries_.end());
}

Context make_context(const DimensionRegistry& registry,
                     std::span<const std::pair<std::string, TagValue>> pairs) {
  std::vector<MicroContext> entries;
  entries.reserve(pairs.size());
  for (const auto& [name, tag] : pairs) entries.push_back(make_micro(registry.lookup(name), tag));
  return Context(std::move(entries));
}

Context make_context(const DimensionRegistry& registry,
                     std::initializer_list<std::pair<std::string, TagValue>> pairs) {
  return make_context(registry, std::span<const std::pair<std::string, TagValue>>(pairs.begin(), pairs.size()));
}

std::size_t degree(const Context& c) { return dims(c).size(); }

DimSet dims(const Context& c) {
  DimSet out;
  for (const auto& m : c) out.insert(m.dim());
  return out;
}

std::vector<TagValue> tags(const Context& c) {
  std::vector<TagValue> out;
  out.reserve(c.size());
  for (const auto& m : c) out.push_back(m.tag);
  return out;
}

bool is_simple(const Context& c) {
  const auto& e = c.entries();
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i - 1].dim() == e[i].dim()) return false;
  }
  return true;
}

bool is_micro(const Context& c) { return c.size() == 1; }

std::string_view containment_name(Containment c) noexcept {
  switch (c) {
    case Containment::equal: return "equal";
    case Containment::subset: return "subset";
    case Containment::superset: return "superset";
    case Containment::incomparable: return "incomparable";
  }
  return "?";
}

Containment compare(const Context& c1, const Context& c2) {
  const bool le = std::includes(c2.begin(), c2.end(), c1.begin(), c1.end());
  const bool ge = std::includes(c1.begin(), c1.end(), c2.begin(), c2.end());
  if (le && ge) return Containment::equal;
  if (le) return Containment::subset;
  if (ge) return Containment::superset;
  return Containment::incomparable;
}

std::string to_string(const Context& c) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : c) {
    if (!first) out += ',';
    first = false;
    out += '(' + m.dim() + ',' + m.tag.to_string() + ')';
  }
  return out + "}";
}

std::string to_string(const DimSet& d) {
  std::string out = "{";
  bool first = true;
  for (const auto& name : d) {
    if (!first) out += ',';
    first = false;
    out += name;
  }
  return out + "}";
}

}  // namespace ctxcalc
