#pragma once

#include "ctxcalc/choice_rng.hpp"
#include "ctxcalc/context_set.hpp"

namespace ctxcalc {

// Member-wise liftings of the context operators.
ContextSet lift_projection(const ContextSet& s, const DimSet& d);
ContextSet lift_hiding(const ContextSet& s, const DimSet& d);
// Substitutes {(dim, tag)} into every member. Throws TagTypeMismatch or
// TagOutsideDomain if the tag does not belong to the dimension.
ContextSet lift_substitution(const ContextSet& s, const DimensionPtr& dim, const TagValue& tag);
ContextSet lift_choice(const ContextSet& s1, const ContextSet& s2, ChoiceRng& rng);
ContextSet lift_override(const ContextSet& s1, const ContextSet& s2);
ContextSet lift_difference(const ContextSet& s1, const ContextSet& s2);

// Relational operators. The shared dimensions are the intersection of the
// dimension unions of the two operands.
ContextSet join(const ContextSet& s1, const ContextSet& s2);
ContextSet set_intersection(const ContextSet& s1, const ContextSet& s2);
ContextSet set_union(const ContextSet& s1, const ContextSet& s2);

}  // namespace ctxcalc
