#pragma once

#include "ctxcalc/tag_value.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctxcalc {

// The type of tags a dimension accepts. Enumerations carry their label set.
struct TagType {
  TagKind kind = TagKind::integer;
  std::shared_ptr<const EnumType> enum_type;

  static TagType of(TagKind kind) { return TagType{kind, nullptr}; }
  static TagType enumeration(std::string name, std::vector<std::string> labels);

  bool accepts(const TagValue& tag) const;
  std::string to_string() const;  // int | str | bool | enum{Ja,Fe}
};

class Dimension {
 public:
  Dimension(std::string name, TagType type, std::optional<std::vector<TagValue>> domain)
      : name_(std::move(name)), type_(std::move(type)), domain_(std::move(domain)) {}

  const std::string& name() const noexcept { return name_; }
  const TagType& type() const noexcept { return type_; }
  TagKind kind() const noexcept { return type_.kind; }
  // Finite ordered domain, strictly increasing. Absent means unbounded.
  const std::optional<std::vector<TagValue>>& domain() const noexcept { return domain_; }

  bool in_domain(const TagValue& tag) const;

 private:
  std::string name_;
  TagType type_;
  std::optional<std::vector<TagValue>> domain_;
};

using DimensionPtr = std::shared_ptr<const Dimension>;

bool is_identifier(std::string_view text) noexcept;

// Throws TagTypeMismatch or TagOutsideDomain.
void check_tag(const Dimension& dim, const TagValue& tag);

// Single writer, many readers. Dimensions are immutable once registered.
class DimensionRegistry {
 public:
  // Enum dimensions without an explicit domain take all labels in order.
  DimensionPtr register_dimension(const std::string& name, TagType type,
                                  std::optional<std::vector<TagValue>> domain = std::nullopt);

  // Throws UnknownDimension.
  DimensionPtr lookup(std::string_view name) const;
  DimensionPtr find(std::string_view name) const noexcept;
  bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }
  std::size_t size() const noexcept { return dims_.size(); }

  std::vector<DimensionPtr> dimensions() const;

 private:
  std::map<std::string, DimensionPtr, std::less<>> dims_;
};

}  // namespace ctxcalc
