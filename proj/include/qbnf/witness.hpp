#pragma once
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qbnf/quotient.hpp"

namespace qbnf {

// A non-emptiness witness: a recipe producing one container value from one
// atom per declared sort.  The witness property says the recipe leaks
// nothing: every sort-i atom of the built value forces i to be declared and
// the atom to equal the argument supplied for i.
struct Witness {
  std::string name;
  std::vector<int> indices;                            // sorted, duplicate-free
  std::function<Val(const std::vector<Atom>&)> build;  // one atom per index
};

// Sweep every argument tuple over the declared universes and test the built
// value's setters for the witness property.
CheckResult wt_check(const FunctorSpec& f, const Witness& w, const Universes& us,
                     const CheckConfig& cfg);

// The same sweep against the quotient's setters.  Because those are upper
// bounds when a class search is truncated, a clean sweep is a real pass and
// only a violation inside an inexact setter demotes the verdict to resource.
CheckResult wt_check(const QuotientSpec& q, const Witness& w, const Universes& us,
                     const CheckConfig& cfg);

// Compose a raw witness with the canonical-representative map and re-check
// the property against the quotient's setters; anything short of a pass is a
// refusal carrying the sweep's detail.  Recipes a raw container rejects can
// become witnesses this way when the quotient's setters forget the leaked
// atoms.
std::variant<Witness, Refusal> wt_lift(const QuotientSpec& q, const Witness& w,
                                       const Universes& us, const CheckConfig& cfg);

// Keep only the witnesses minimal under index-set subsumption: a witness is
// dropped when another one demands a strict subset of its indices, or the
// same set under a lexicographically smaller name (exact duplicates keep one
// copy).  The result is sorted by (indices, name), so the operation is
// idempotent and independent of input order.
std::vector<Witness> wt_minimal(const std::vector<Witness>& ws);

// A subtype: the subset of a container carved out by a predicate.  The
// predicate must be universe-polymorphic and invariant under bijective
// renaming of atoms.
struct SubtypePred {
  std::string name;
  std::function<bool(const Val&)> pred;
};

// The bare restriction, with no admission checks: the shape test and the
// enumeration are filtered by the predicate and relator witnesses are
// constrained to the subtype.  Negative controls run checkers on this
// directly; st_make is the guarded constructor.
FunctorSpec st_restrict(const FunctorSpec& f, const SubtypePred& p);

// Verify the two inheritance conditions at desk bounds, then return the
// restriction.  Condition 1: the field is closed under the mapper for every
// endofunction tuple.  Condition 2: every pair-atom value both of whose
// projections lie in the field admits a field member with setters inside its
// own and the same projections.  A refusal names the violated condition and
// carries the offending value.
std::variant<FunctorSpec, Refusal> st_make(const FunctorSpec& f, const SubtypePred& p,
                                           const CheckConfig& cfg);

// Restrict, then quotient the restriction over cfg.universe token universes;
// a refusal says which stage balked.
std::variant<QuotientSpec, Refusal> st_partial_quotient(const FunctorSpec& f,
                                                        const SubtypePred& p, const EquivSpec& e,
                                                        const CheckConfig& cfg);

}  // namespace qbnf
