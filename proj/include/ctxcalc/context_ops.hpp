#pragma once

#include "ctxcalc/choice_rng.hpp"
#include "ctxcalc/context.hpp"
#include "ctxcalc/context_set.hpp"

#include <cstddef>
#include <span>

namespace ctxcalc {

// Largest set a range operator will materialize before raising RangeTooLarge.
inline constexpr std::size_t max_range_result = 1'000'000;

// Conflict-free union: entries of c1 on dimensions c2 does not mention, plus
// all of c2. Throws NonSimpleOperand unless c2 is simple.
Context override_with(const Context& c1, const Context& c2);

Context difference(const Context& c1, const Context& c2);
Context conjunction(const Context& c1, const Context& c2);
Context disjunction(const Context& c1, const Context& c2);

// Uniformly selects one candidate. Throws EmptyChoice.
Context choice(std::span<const Context> candidates, ChoiceRng& rng);

Context projection(const Context& c, const DimSet& d);
Context hiding(const Context& c, const DimSet& d);

// (c hidden on dims(s)) joined with (s projected on dims(c)).
// Throws NonSimpleOperand unless s is simple.
Context substitution(const Context& c, const Context& s);

// Every simple context obtained by letting each shared dimension range over
// the inclusive span between the paired tags, with the unshared entries of
// both operands attached. Integer tags step by one (restricted to the declared
// domain if there is one); enum tags step through the domain.
// Throws UnorderedRangeDimension, NonSimpleResidue, RangeTooLarge.
ContextSet undirected_range(const Context& c1, const Context& c2);

// As undirected_range, but a shared pair only spans tag(m1)..tag(m2) when
// tag(m1) < tag(m2). Pairs that fail the test contribute nothing, and their
// dimension is still removed from both operands.
// Throws NonSimpleOperand unless c2 is simple, plus the undirected errors.
ContextSet directed_range(const Context& c1, const Context& c2);

}  // namespace ctxcalc
