#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qbnf/atom.hpp"

namespace qbnf {

// Constructor labels for the term grammars used by the container zoo.  One
// shared enum keeps values printable and comparable without per-container
// machinery; which labels are legal for a given container is the container
// spec's business.
enum class Ct : std::uint8_t {
  nil,    // list: []
  cons,   // list: head :: tail
  pr,     // pair: (x, y)
  inl,    // sum: left injection
  inr,    // sum: right injection
  none,   // option: empty
  some,   // option: filled
  rzero,  // regex: empty language
  reps,   // regex: empty word
  ratom,  // regex: single letter
  ralt,   // regex: alternation
  rconc,  // regex: concatenation
  rstar,  // regex: iteration
  fin,    // sequence model: finite list of elements
  inf,    // sequence model: eventually periodic stream (prefix, cycle)
  pre,    // the prefix block of an `inf`
  cyc,    // the cycle block of an `inf`
  tll,    // terminated sequence: (sequence, terminator)
  slot,   // composition boundary: wraps an inner-container value (aux = outer sort)
};

const char* ct_name(Ct c);

// A value is a finite term: either a leaf holding one atom of some sort, or a
// constructor node with children.  Containers interpret these terms; the
// generic operations below (mapping leaves, collecting leaves) are shared.
struct Val {
  bool is_leaf = false;
  std::int16_t sort = 0;  // leaf only
  Atom atom;              // leaf only
  Ct ct = Ct::nil;        // node only
  std::int16_t aux = 0;   // node only (slot: outer sort index)
  std::vector<Val> kids;  // node only

  static Val leaf(int sort, const Atom& a);
  static Val node(Ct ct, std::vector<Val> kids = {}, int aux = 0);

  std::string str() const;  // readable canonical rendering
};

// Total order: leaves before nodes; leaves by (sort, atom); nodes by
// (ct, aux, arity, children lexicographically).
int cmp(const Val& x, const Val& y);
bool operator==(const Val& x, const Val& y);
bool operator!=(const Val& x, const Val& y);
bool operator<(const Val& x, const Val& y);

std::size_t val_hash(const Val& x);

// Shared structural helpers.
int node_count(const Val& x);                    // constructor nodes, leaves free
void for_each_leaf(const Val& x, const std::function<void(const Val&)>& f);
AtomSet leaf_atoms(const Val& x, int sort);      // atoms of the given sort
Val map_leaves(const Val& x, const AtomFns& fns);  // apply fns[sort] at every leaf
bool leaves_in(const Val& x, const Universes& us);

// The unique pairing of two equi-shaped terms: leaves become pair atoms,
// everything else must match exactly.  Returns false when shapes differ.
bool zip_vals(const Val& x, const Val& y, Val& out);

}  // namespace qbnf

template <>
struct std::hash<qbnf::Val> {
  std::size_t operator()(const qbnf::Val& v) const { return qbnf::val_hash(v); }
};
