#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbnf/atom.hpp"
#include "qbnf/config.hpp"
#include "qbnf/value.hpp"

namespace qbnf {

// A container specification: an n-sorted container type together with its
// mapper, per-sort setters, enumerator and size measure.  The relator is
// derived generically (see rel_tri below).  Implementations may override the
// mapper/setters; the defaults are structural leaf replacement / collection,
// which is what every rigid term grammar wants.
struct FunctorSpec {
  std::string name;
  int arity = 1;

  std::function<Val(const FunctorSpec&, const AtomFns&, const Val&)> map_impl;
  std::function<AtomSet(const FunctorSpec&, int, const Val&)> set_impl;
  std::function<std::vector<Val>(const FunctorSpec&, const Universes&, int)> enum_impl;
  std::function<int(const Val&)> size_impl;
  std::function<bool(const Val&)> shape_ok;

  // True when the mapper is plain leaf replacement.  In that case two values
  // are related exactly when they have the same shape and the unique leaf
  // pairing lands inside the relations, so the relator needs no search.
  bool structural_map = true;
  // True when relator witnesses must additionally pass this container's own
  // membership test (subtypes): the relator then searches the container's
  // enumeration instead of pairing leaves.
  bool witness_constrained = false;
  // Optional exact relator shortcut for containers whose mapper normalises.
  std::function<std::optional<bool>(const FunctorSpec&, const AtomRels&, const Val&, const Val&)>
      rel_fast;
  // Optional explicit witness builder: a pair-atom value projecting onto x and
  // y when one exists (ignoring any relation constraint — the caller checks
  // the witness's atoms).  Defaults to the structural leaf zip.
  std::function<std::optional<Val>(const FunctorSpec&, const Val&, const Val&)> witness_impl;
};

// Throws malformed_value_error unless x fits F's grammar and arity.
void validate(const FunctorSpec& f, const Val& x);

// The mapper: apply per-sort atom functions under the container shape.
Val fmap(const FunctorSpec& f, const AtomFns& fns, const Val& x);

// The sort-i setter: the atoms of sort i contained in x.
AtomSet set_at(const FunctorSpec& f, int i, const Val& x);
std::vector<AtomSet> sets(const FunctorSpec& f, const Val& x);

// Size of a value under F's measure (lists measure length, terms count
// constructor nodes).
int fsize(const FunctorSpec& f, const Val& x);

// Direct membership in the span of a set family: every sort-i atom of x lies
// in as[i].
bool in_sets(const FunctorSpec& f, const std::vector<AtomSet>& as, const Val& x);

// Membership decided through the mapper alone: x lies in the span of as iff
// every two function families into the one-point-extended universes that
// agree on as act identically on x.  Exponential in |universe|; guarded by
// cfg.fn_enum_limit.
bool in_sets_by_map(const FunctorSpec& f, const Universes& us, const std::vector<AtomSet>& as,
                    const Val& x, const CheckConfig& cfg);
// The same membership test with equality replaced by an arbitrary sameness
// predicate; quotients use their own decision procedure here.
bool in_sets_by_map_with(const FunctorSpec& f, const Universes& us,
                         const std::vector<AtomSet>& as, const Val& x, const CheckConfig& cfg,
                         const std::function<bool(const Val&, const Val&)>& same);

// Exhaustive, duplicate-free, deterministically ordered enumeration of all
// values of size <= bound over the given universes.
std::vector<Val> enumerate_vals(const FunctorSpec& f, const Universes& us, int bound);

enum class Tri { yes, no, unknown };

// The relator.  rel R x y holds iff some witness container of pairs drawn
// from R projects onto x and y.  Structural containers decide this exactly by
// pairing leaves; witness-constrained or normalising containers search their
// own enumeration, and report `unknown` if the bounded search is inconclusive.
Tri rel_tri(const FunctorSpec& f, const AtomRels& rs, const Val& x, const Val& y,
            const CheckConfig& cfg);
// Convenience wrapper: throws resource_limit_error on `unknown`.
bool rel_holds(const FunctorSpec& f, const AtomRels& rs, const Val& x, const Val& y,
               const CheckConfig& cfg);
// The defining witness search itself, independent of any shortcut; used to
// cross-check the shortcuts.  size_bound limits the witness size.
Tri rel_by_witness(const FunctorSpec& f, const AtomRels& rs, const Val& x, const Val& y,
                   int size_bound);

// A pair-atom value projecting onto x and y, or nothing when the shapes
// cannot be reconciled; uses witness_impl when the container provides one.
std::optional<Val> rel_witness(const FunctorSpec& f, const Val& x, const Val& y);

// Composition: plug one inner container into each sort of the outer one.
// All inner containers must share one arity, which becomes the composite's.
FunctorSpec compose(const FunctorSpec& outer, const std::vector<FunctorSpec>& inners);

}  // namespace qbnf
