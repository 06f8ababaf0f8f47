#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ctxcalc {

using Integer = boost::multiprecision::cpp_int;

enum class TagKind { integer, string, boolean, enumeration };

std::string_view kind_name(TagKind kind) noexcept;

// A named, ordered set of labels. Ordering of its elements is declaration order.
struct EnumType {
  std::string name;
  std::vector<std::string> labels;

  std::optional<std::size_t> index_of(std::string_view label) const;
};

struct EnumTag {
  std::shared_ptr<const EnumType> type;
  std::size_t ordinal = 0;

  const std::string& label() const { return type->labels.at(ordinal); }
};

class TagValue {
 public:
  static TagValue integer(Integer value);
  static TagValue string(std::string value);
  static TagValue boolean(bool value);
  // Throws TagTypeMismatch if ordinal is outside the enum.
  static TagValue enumerated(std::shared_ptr<const EnumType> type, std::size_t ordinal);

  TagKind kind() const noexcept;

  const Integer& as_integer() const;
  const std::string& as_string() const;
  bool as_boolean() const;
  const EnumTag& as_enum() const;

  // Canonical literal syntax: 5, -3, "text", true, Ja
  std::string to_string() const;

  // Structural equality and a total order over all values (kind first). The
  // order exists for container use; semantic comparison is compare_tags().
  friend bool operator==(const TagValue& a, const TagValue& b);
  friend std::strong_ordering operator<=>(const TagValue& a, const TagValue& b);

 private:
  using Storage = std::variant<Integer, std::string, bool, EnumTag>;
  explicit TagValue(Storage v) : value_(std::move(v)) {}
  Storage value_;
};

// Same kind, and for enums the same enumerated type.
bool same_tag_type(const TagValue& a, const TagValue& b);

// Semantic ordering. std::nullopt when the two tags are not comparable.
std::optional<std::strong_ordering> compare_tags(const TagValue& a, const TagValue& b);

}  // namespace ctxcalc
