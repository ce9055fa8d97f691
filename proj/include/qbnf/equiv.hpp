#pragma once
#include <functional>
#include <string>
#include <vector>

#include "qbnf/functor.hpp"

namespace qbnf {

// An equivalence candidate on the values of a container.  `decide` must make
// sense over any universe the values may draw their atoms from (base
// universes, one-point extensions, pair universes): it may inspect structure
// and compare atoms, but never hard-code particular atoms.  `neighbors`
// applies the defining generator equations once in both directions; the
// bounded class enumeration below is its closure.  `normalize` is optional
// and, when present, maps every value to the canonical member of its class.
struct EquivSpec {
  std::string name;
  std::function<bool(const Val&, const Val&)> decide;
  std::function<std::vector<Val>(const Val&, const Universes&)> neighbors;
  std::function<Val(const Val&)> normalize;  // may be null

  // Declares that a failed bounded relator search is conclusive: whenever two
  // classes are related at all, related members exist within the class caps.
  // This is a per-example smallness argument (recorded with the gallery
  // entry), needed because classes with growing generators never exhaust.
  // When false, a failed search is reported as unknown unless both classes
  // were exhausted.
  bool small_witnesses = false;
};

// Plain equality; the trivial equivalence on any container.
EquivSpec equality_equiv();

struct ClassEnum {
  std::vector<Val> members;  // sorted, deduplicated, includes the seed
  bool exhausted = false;    // true iff the closure drained with nothing pruned
};

// Bounded breadth-first closure of `neighbors` from x: up to cfg.class_depth
// generator applications, members no larger than size(x) + cfg.class_size_slack,
// at most cfg.class_member_cap members.  `exhausted` is the "this really is
// the whole class" flag; when it is false the result is a subset of the class.
ClassEnum class_enum(const EquivSpec& e, const FunctorSpec& f, const Val& x, const Universes& us,
                     const CheckConfig& cfg);

// The canonical representative used for quotient values: the normalizer's
// output when one exists, otherwise the least member (by size, then term
// order) of the bounded class.
Val canonical_rep(const EquivSpec& e, const FunctorSpec& f, const Val& x, const Universes& us,
                  const CheckConfig& cfg);

}  // namespace qbnf
