#include "ctxcalc/tag_value.hpp"

#include "ctxcalc/errors.hpp"

namespace ctxcalc {

namespace {

std::strong_ordering compare_integers(const Integer& a, const Integer& b) {
  const int c = a.compare(b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view kind_name(TagKind kind) noexcept {
  switch (kind) {
    case TagKind::integer: return "int";
    case TagKind::string: return "str";
    case TagKind::boolean: return "bool";
    case TagKind::enumeration: return "enum";
  }
  return "?";
}

std::optional<std::size_t> EnumType::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

TagValue TagValue::integer(Integer value) { return TagValue(Storage(std::move(value))); }
TagValue TagValue::string(std::string value) {
  return TagValue(Storage(std::in_place_index<1>, std::move(value)));
}
TagValue TagValue::boolean(bool value) { return TagValue(Storage(std::in_place_index<2>, value)); }

TagValue TagValue::enumerated(std::shared_ptr<const EnumType> type, std::size_t ordinal) {
  if (!type || ordinal >= type->labels.size()) {
    throw Error(ErrorCode::tag_type_mismatch, "enum ordinal out of range");
  }
  return TagValue(Storage(EnumTag{std::move(type), ordinal}));
}

TagKind TagValue::kind() const noexcept { return static_cast<TagKind>(value_.index()); }

const Integer& TagValue::as_integer() const { return std::get<0>(value_); }
const std::string& TagValue::as_string() const { return std::get<1>(value_); }
bool TagValue::as_boolean() const { return std::get<2>(value_); }
const EnumTag& TagValue::as_enum() const { return std::get<3>(value_); }

std::string TagValue::to_string() const {
  switch (kind()) {
    case TagKind::integer: return as_integer().str();
    case TagKind::string: return quote(as_string());
    case TagKind::boolean: return as_boolean() ? "true" : "false";
    case TagKind::enumeration: return as_enum().label();
  }
  return {};
}

bool operator==(const TagValue& a, const TagValue& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const TagValue& a, const TagValue& b) {
  if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
  switch (a.kind()) {
    case TagKind::integer: return compare_integers(a.as_integer(), b.as_integer());
    case TagKind::string: return a.as_string() <=> b.as_string();
    case TagKind::boolean: return a.as_boolean() <=> b.as_boolean();
    case TagKind::enumeration: {
      const auto& x = a.as_enum();
      const auto& y = b.as_enum();
      if (auto c = x.type->name <=> y.type->name; c != 0) return c;
      return x.ordinal <=> y.ordinal;
    }
  }
  return std::strong_ordering::equal;
}

bool same_tag_type(const TagValue& a, const TagValue& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TagKind::enumeration) return a.as_enum().type->name == b.as_enum().type->name;
  return true;
}

std::optional<std::strong_ordering> compare_tags(const TagValue& a, const TagValue& b) {
  if (!same_tag_type(a, b)) return std::nullopt;
  return a <=> b;
}

}  // namespace ctxcalc
