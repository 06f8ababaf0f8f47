#include "ctxcalc/context_set.hpp"

#include "ctxcalc/errors.hpp"

#include <algorithm>

namespace ctxcalc {

ContextSet::ContextSet(std::vector<Context> members) : members_(std::move(members)) {
  for (const auto& c : members_) {
    if (!is_simple(c)) {
      throw Error(ErrorCode::non_simple_operand, "context set member " + to_string(c) + " is not simple");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool ContextSet::contains(const Context& c) const {
  return std::binary_search(members_.begin(), members_.end(), c);
}

std::strong_ordering operator<=>(const ContextSet& a, const ContextSet& b) {
  return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(), b.members_.begin(),
                                                b.members_.end());
}

DimSet dims(const ContextSet& s) {
  DimSet out;
  for (const auto& c : s) {
    for (const auto& m : c) out.insert(m.dim());
  }
  return out;
}

std::string to_string(const ContextSet& s) {
  if (s.empty()) return "emptyset";
  std::string out = "{";
  bool first = true;
  for (const auto& c : s) {
    if (!first) out += ',';
    first = false;
    out += to_string(c);
  }
  return out + "}";
}

}  // namespace ctxcalc
