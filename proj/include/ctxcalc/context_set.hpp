#pragma once

#include "ctxcalc/context.hpp"

#include <vector>

namespace ctxcalc {

// A finite set of simple contexts, kept sorted and deduplicated.
class ContextSet {
 public:
  ContextSet() = default;
  // Throws NonSimpleOperand if any member is not simple.
  explicit ContextSet(std::vector<Context> members);

  const std::vector<Context>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  bool contains(const Context& c) const;

  friend bool operator==(const ContextSet&, const ContextSet&) = default;
  friend std::strong_ordering operator<=>(const ContextSet& a, const ContextSet& b);

 private:
  std::vector<Context> members_;
};

// Union of dims over every member.
DimSet dims(const ContextSet& s);

// Canonical text: {{(d,1)},{(d,2)}}; the empty set prints as emptyset.
std::string to_string(const ContextSet& s);

}  // namespace ctxcalc
