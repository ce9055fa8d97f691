#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qbnf/base_functors.hpp"
#include "qbnf/equiv.hpp"
#include "qbnf/rewrite.hpp"
#include "qbnf/witness.hpp"

namespace qbnf {

// --- the equivalences of the container zoo ------------------------------------

// Unordered pairs: the two components may be swapped.
EquivSpec upair_equiv();

// Finite sets as lists: order and multiplicity are irrelevant.
EquivSpec fset_equiv();

// Distinct lists: multiplicity is irrelevant; canonical form keeps the LAST
// occurrence of every element.
EquivSpec dlist_equiv();

// Cyclic lists: rotations are identified.
EquivSpec cyclist_equiv();

// Free idempotent monoid on words: the closure of ws.ys.zs ~ ws.ys.ys.zs.
EquivSpec fim_equiv();

// Left-injection collapse on the one-sorted sum: all Inl values identified.
EquivSpec qp_equiv();

// Terminated sequences: when the sequence is infinite the terminator is
// irrelevant; finite sequences keep it.
EquivSpec tllist_equiv();

// Finitely-valued streams equal at all but finitely many positions.
EquivSpec fae_equiv();

// Regular expressions modulo alternation associativity/commutativity/
// idempotence.
EquivSpec aci_equiv();

// Regular expressions with the additional Zero and distribution equations;
// no canonical form exists, so the decision procedure is bounded
// bidirectional joinability of the restricted rewrite.
EquivSpec acidz_equiv(const CheckConfig& cfg);

// --- standalone decision helpers ----------------------------------------------

// Word equality in the free idempotent monoid (recursive alphabet/extremal-
// affix characterization; the bounded rewrite closure is its test oracle).
bool fim_decide(const std::vector<Atom>& u, const std::vector<Atom>& v);

// Least rotation, the canonical form for cyclic lists.
std::vector<Atom> cyclist_canonical(const std::vector<Atom>& xs);

// Keep the last occurrence of every element, the canonical form for distinct
// lists.
std::vector<Atom> remdups_last(const std::vector<Atom>& xs);

// --- the catalog ----------------------------------------------------------------

// One shelf of the container zoo: a functor, the equivalence that carves its
// quotient, the rewrite orientation feeding the confluence route (when one is
// on file), shipped non-emptiness recipes, and the verdict every condition
// checker is expected to return at the standard bounds.  The expected map has
// one entry per condition checker, keyed by the checker's law string.
struct GalleryEntry {
  std::string name;
  FunctorSpec functor;
  EquivSpec equivalence;
  std::optional<RewriteSystem> rewrite;
  std::vector<Witness> witnesses;
  std::map<std::string, Status> expected;
  std::string notes;
};

// Every catalogued container, in a stable order.  Entries whose expected map
// shows a failing condition are kept deliberately: they are the negative
// controls the checkers are calibrated against.
std::vector<GalleryEntry> gallery();

}  // namespace qbnf
