#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbnf/equiv.hpp"
#include "qbnf/functor.hpp"
#include "qbnf/report.hpp"

namespace qbnf {

// A one-step rewrite relation, given as a set-valued successor function.  The
// universes are passed along because some rules need to know which atoms may
// appear; a step function must be natural under bijective renamings and must
// never invent atoms outside the value it rewrites.
struct RewriteSystem {
  std::string name;
  std::function<std::vector<Val>(const Val&, const Universes&)> step;
};

// One condition of the confluence route to subdistributivity, checked over
// every value enumerable within the recorded bounds.  All verdicts are
// bounded statements: `pass` never claims the unbounded property.
struct CertFragment {
  std::string condition;
  Status status = Status::pass;
  std::string mode;  // confluence fragment only: "strong" or "bounded-join"
  long cases = 0;
  std::optional<std::string> counterexample;
  std::string note;
};

struct ConfluenceCertificate {
  std::string system;
  std::string equivalence;
  std::string bounds;  // human-readable record of the bounds used
  bool certified = false;
  std::vector<CertFragment> fragments;
  const CertFragment* find(const std::string& condition) const;
};

// Everything reachable from x in at most depth steps, x included; sorted and
// deduplicated.  Throws resource_limit_error past cfg.reach_node_cap nodes.
std::vector<Val> rw_reachable(const RewriteSystem& s, const Val& x, int depth,
                              const Universes& us, const CheckConfig& cfg);

// A common reduct of y and z, each side within depth steps, when one exists
// in bounds.  The two frontiers are grown level by level and the least value
// of the earliest nonempty intersection is returned; absent means "not found
// within bounds", while exceeding the node cap raises resource_limit_error —
// a truncated search is never reported as a negative.
std::optional<Val> rw_joinable(const RewriteSystem& s, const Val& y, const Val& z, int depth,
                               const Universes& us, const CheckConfig& cfg);

// For every enumerated x and every peak y <~ x ~> z: find a common reduct
// with one side taking at most one step and the other at most cfg.join_depth.
// A peak that resists the one-step form is retried with cfg.join_depth on
// both sides; any such retry flips the fragment's mode from "strong" to
// "bounded-join".  The first unjoinable peak fails the fragment.
CertFragment rw_strong_confluence(const RewriteSystem& s, const FunctorSpec& f,
                                  const Universes& us, const CheckConfig& cfg);

// Containment of the equivalence in the rewrite's equivalence closure: every
// generator instance (x, y) produced by e.neighbors at bounds must be
// joinable under s.  Undecided pairs fail the fragment with a note.
CertFragment rw_closure_contains(const RewriteSystem& s, const EquivSpec& e,
                                 const FunctorSpec& f, const Universes& us,
                                 const CheckConfig& cfg);

// The converse containment at bounds: every one-step successor stays inside
// the equivalence, so the rewrite never leaves a class.
CertFragment rw_steps_within(const RewriteSystem& s, const EquivSpec& e, const FunctorSpec& f,
                             const Universes& us, const CheckConfig& cfg);

// The projection-factoring condition.  Values are enumerated over pair-atom
// universes; for every such x and every step taken by a projection,
// map fst x ~> y, the search must produce a y' with map fst y' = y, with
// x ~ y', and with every setter of y' contained in the corresponding setter
// of x; dually for snd.  Candidates are drawn from the bounded reach of x
// under the pair-instantiated system, which suffices exactly when steps lift
// through projections — the condition being checked.
CertFragment rw_factors_projections(const RewriteSystem& s, const FunctorSpec& f,
                                    const EquivSpec& e, const Universes& us,
                                    const CheckConfig& cfg);

// The full bundle: the mapper-respect gate plus the four fragments above.
// Confluence, containment, and step soundness run over the configured
// universe extended by one fresh atom (catching renaming-sensitive rules);
// projection factoring runs over pair atoms of the configured universe.
// certified is true iff the gate and every fragment pass.
ConfluenceCertificate certify_subdistributivity(const RewriteSystem& s, const EquivSpec& e,
                                                const FunctorSpec& f, const CheckConfig& cfg);

// --- the concrete systems of the gallery ---------------------------------------

// Drop a list element that occurs again later.  Terminating but it forgets
// which atoms a pair-valued list carried, so projection factoring fails.
RewriteSystem rw_dlist_removing();

// Insert, in front of a position, a copy of an element occurring at or after
// it.  The orientation that certifies the distinct-list quotient.
RewriteSystem rw_dlist_inserting();

// Move the head to the back; the empty list steps to itself.
RewriteSystem rw_rotate();

// Duplicate a contiguous block in place (w.y.z to w.y.y.z).
RewriteSystem rw_fim();

// Collapse an adjacent doubled block (w.y.y.z to w.y.z).  Terminating but not
// confluent: kept as the negative control.
RewriteSystem rw_fim_collapsing();

// The generator moves of the finite-set quotient: adjacent swaps plus
// duplicate insertion and removal.
RewriteSystem rw_fset_moves();

// Alternation rearrangement on regular expressions.
RewriteSystem rw_aci();

// Alternation rearrangement plus zero elimination and right distribution,
// restricted congruence.
RewriteSystem rw_acidz();

}  // namespace qbnf
