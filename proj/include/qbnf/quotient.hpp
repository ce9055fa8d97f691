#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qbnf/equiv.hpp"
#include "qbnf/functor.hpp"
#include "qbnf/report.hpp"

namespace qbnf {

// Why a quotient could not be formed: which precondition failed and its
// counterexample.
struct Refusal {
  std::string check;
  std::string detail;
};

// A setter result: the atoms, plus whether the bounded class search makes the
// value exact or only a sound upper bound.
struct QSet {
  AtomSet atoms;
  bool exact = true;
};

// The quotient container: a raw container plus a verified equivalence.
// Quotient values are handled through canonical representatives; equality of
// quotient values is always the equivalence's decision procedure, never raw
// term equality.  All class enumerations are memoized per (universes, seed).
struct QuotientSpec {
  std::string name;
  FunctorSpec raw;
  EquivSpec eq;
  // Verified at construction: the equivalence keeps setters invariant, which
  // unlocks the representative's setter as an exact fast path.
  bool setter_respecting = false;

  using ClassKey = std::pair<std::string, Val>;
  std::shared_ptr<std::map<ClassKey, ClassEnum>> cache =
      std::make_shared<std::map<ClassKey, ClassEnum>>();

  // Bounded class of x over the given universes (memoized).
  const ClassEnum& cls(const Val& x, const Universes& us, const CheckConfig& cfg) const;

  // Canonical representative of [x].
  Val abs(const Val& x, const Universes& us, const CheckConfig& cfg) const;
  bool same(const Val& x, const Val& y) const { return eq.decide(x, y); }

  // Mapper: map the representative, then re-canonicalize over the target
  // universes.  Representative-independent because map-respect was verified.
  Val map(const AtomFns& fns, const Val& x, const Universes& target_us,
          const CheckConfig& cfg) const;

  // Setter: intersection, over the class of the one-point-extended value, of
  // the base atoms whose embedded copies occur.  Exact when the class was
  // exhausted or the result is already empty; otherwise a sound upper bound.
  QSet set_at(int i, const Val& x, const Universes& us, const CheckConfig& cfg) const;
  std::vector<QSet> sets(const Val& x, const Universes& us, const CheckConfig& cfg) const;

  // Relator: some class members of the one-point-extended endpoints are
  // related by the raw relator under the relation extended with the fresh
  // point paired with itself.  `unknown` when the bounded search neither finds
  // a related pair nor exhausts the classes.
  Tri rel(const AtomRels& rs, const Val& x, const Val& y, const Universes& src_us,
          const Universes& dst_us, const CheckConfig& cfg) const;

  // Negative controls: the naive liftings that ignore the class structure.
  // naive_set is the representative's raw setter (representative-dependent in
  // general); naive_rel relates classes iff some plain representatives are
  // related, with no one-point extension.
  AtomSet naive_set(int i, const Val& x, const Universes& us, const CheckConfig& cfg) const;
  Tri naive_rel(const AtomRels& rs, const Val& x, const Val& y, const Universes& src_us,
                const Universes& dst_us, const CheckConfig& cfg) const;

  // Span membership decided through the mapper with equality replaced by the
  // equivalence.
  bool in_sets_sim(const std::vector<AtomSet>& as, const Val& x, const Universes& us,
                   const CheckConfig& cfg) const;

  // One canonical representative per class, in enumeration order.
  std::vector<Val> enumerate(const Universes& us, int bound, const CheckConfig& cfg) const;
};

// Build a quotient after verifying the preconditions: the relation is an
// equivalence, respects the mapper, and is invariant under atom renamings.
// On failure returns the refusal with the checker's counterexample.
std::variant<QuotientSpec, Refusal> q_make(const FunctorSpec& f, const EquivSpec& e,
                                           const Universes& us, const CheckConfig& cfg);

// Convenience for callers that expect success; throws on refusal.
QuotientSpec q_make_ok(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                       const CheckConfig& cfg);

}  // namespace qbnf
