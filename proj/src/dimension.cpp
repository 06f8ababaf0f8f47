#include "ctxcalc/dimension.hpp"

#include "ctxcalc/errors.hpp"

#include <cctype>

namespace ctxcalc {

TagType TagType::enumeration(std::string name, std::vector<std::string> labels) {
  auto type = std::make_shared<EnumType>();
  type->name = std::move(name);
  type->labels = std::move(labels);
  return TagType{TagKind::enumeration, std::move(type)};
}

bool TagType::accepts(const TagValue& tag) const {
  if (tag.kind() != kind) return false;
  if (kind == TagKind::enumeration) return enum_type && tag.as_enum().type->name == enum_type->name;
  return true;
}

std::string TagType::to_string() const {
  if (kind != TagKind::enumeration) return std::string(kind_name(kind));
  std::string out = "enum{";
  for (std::size_t i = 0; i < enum_type->labels.size(); ++i) {
    if (i) out += ',';
    out += enum_type->labels[i];
  }
  return out + "}";
}

bool Dimension::in_domain(const TagValue& tag) const {
  if (!domain_) return true;
  for (const auto& x : *domain_) {
    if (x == tag) return true;
  }
  return false;
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  const auto first = static_cast<unsigned char>(text.front());
  if (!std::isalpha(first) && first != '_') return false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_') return false;
  }
  return true;
}

void check_tag(const Dimension& dim, const TagValue& tag) {
  if (!dim.type().accepts(tag)) {
    throw Error(ErrorCode::tag_type_mismatch, "tag " + tag.to_string() + " is not of type " +
                                                  dim.type().to_string() + " required by dimension " +
                                                  dim.name());
  }
  if (!dim.in_domain(tag)) {
    throw Error(ErrorCode::tag_outside_domain,
                "tag " + tag.to_string() + " is outside the domain of dimension " + dim.name());
  }
}

DimensionPtr DimensionRegistry::register_dimension(const std::string& name, TagType type,
                                                   std::optional<std::vector<TagValue>> domain) {
  if (!is_identifier(name)) throw Error(ErrorCode::invalid_name, "invalid dimension name '" + name + "'");
  if (dims_.count(name)) throw Error(ErrorCode::duplicate_dimension, "dimension " + name + " already registered");
  if (type.kind == TagKind::enumeration) {
    if (!type.enum_type || type.enum_type->labels.empty()) {
      throw Error(ErrorCode::ill_formed_domain, "enumeration for " + name + " has no labels");
    }
    const auto& labels = type.enum_type->labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!is_identifier(labels[i])) throw Error(ErrorCode::ill_formed_domain, "invalid enum label '" + labels[i] + "'");
      for (std::size_t j = 0; j < i; ++j) {
        if (labels[j] == labels[i]) throw Error(ErrorCode::ill_formed_domain, "duplicate enum label " + labels[i]);
      }
    }
    if (!domain) {
      domain.emplace();
      for (std::size_t i = 0; i < labels.size(); ++i) domain->push_back(TagValue::enumerated(type.enum_type, i));
    }
  }
  if (domain) {
    for (std::size_t i = 0; i < domain->size(); ++i) {
      const auto& x = (*domain)[i];
      if (!type.accepts(x)) {
        throw Error(ErrorCode::ill_formed_domain,
                    "domain element " + x.to_string() + " is not of type " + type.to_string());
      }
      if (i > 0 && !((*domain)[i - 1] < x)) {
        throw Error(ErrorCode::ill_formed_domain, "domain of " + name + " is not strictly increasing");
      }
    }
  }
  auto dim = std::make_shared<const Dimension>(name, std::move(type), std::move(domain));
  dims_.emplace(name, dim);
  return dim;
}

DimensionPtr DimensionRegistry::lookup(std::string_view name) const {
  auto dim = find(name);
  if (!dim) throw Error(ErrorCode::unknown_dimension, "unknown dimension " + std::string(name));
  return dim;
}

DimensionPtr DimensionRegistry::find(std::string_view name) const noexcept {
  auto it = dims_.find(name);
  return it == dims_.end() ? nullptr : it->second;
}

std::vector<DimensionPtr> DimensionRegistry::dimensions() const {
  std::vector<DimensionPtr> out;
  out.reserve(dims_.size());
  for (const auto& [_, d] : dims_) out.push_back(d);
  return out;
}

}  // namespace ctxcalc
