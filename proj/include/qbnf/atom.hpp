#pragma once
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbnf/config.hpp"

namespace qbnf {

// An atom is an opaque element of a universe.  Plain atoms are small integer
// tokens; on top of those the quotient constructions need three derived
// shapes: a fresh point (the "star" adjoined when a universe is extended by
// one element), embedded copies of base atoms (the injection into that
// extended universe), and pairs (elements of a relation viewed as a universe).
// Atoms are immutable values with a total order.
class Atom {
 public:
  Atom() : code_{0} {}

  static Atom tok(std::int32_t k);
  static Atom star();
  static Atom emb(const Atom& a);
  static Atom pair(const Atom& a, const Atom& b);

  bool is_tok() const { return code_.back() >= 0; }
  bool is_star() const { return code_.back() == kStar; }
  bool is_emb() const { return code_.back() == kEmb; }
  bool is_pair() const { return code_.back() == kPair; }

  std::int32_t tok_value() const;
  Atom emb_arg() const;
  Atom pair_fst() const;
  Atom pair_snd() const;

  friend bool operator==(const Atom& x, const Atom& y) { return x.code_ == y.code_; }
  friend bool operator<(const Atom& x, const Atom& y) { return x.code_ < y.code_; }
  friend bool operator!=(const Atom& x, const Atom& y) { return !(x == y); }

  std::size_t hash() const;

  // Rendering: plain tokens get per-sort letter names (sort 0: a,b,c,...;
  // sort 1: p,q,r,...), the fresh point prints as "@", embedded atoms as
  // "^a", pairs as "(a,b)".  Pass sort = -1 for sortless contexts.
  std::string str(int sort = -1) const;

 private:
  static constexpr std::int32_t kStar = -1;
  static constexpr std::int32_t kEmb = -2;
  static constexpr std::int32_t kPair = -3;
  // Postfix encoding; the last element identifies the kind.
  std::vector<std::int32_t> code_;

  static std::size_t operand_len(const std::vector<std::int32_t>& c, std::size_t end);
};

using AtomSet = std::set<Atom>;

// A finite carrier of atoms for one sort.  Atoms are kept sorted so that any
// iteration over a universe is deterministic.
struct Universe {
  std::vector<Atom> atoms;

  Universe() = default;
  explicit Universe(std::vector<Atom> as);
  // n plain token atoms 0..n-1.
  static Universe tokens(int n);

  bool contains(const Atom& a) const;
  int size() const { return static_cast<int>(atoms.size()); }
  std::string str(int sort = -1) const;
};

using Universes = std::vector<Universe>;

Universes token_universes(int arity, int n);

// The given universe extended by one fresh point: {@} plus embedded copies
// of every atom.  The embedding a -> ^a is injective and misses "@".
Universe opt_universe(const Universe& u);
Universes opt_universes(const Universes& us);

// A total function between two universes, stored as an explicit table.
struct AtomFn {
  std::map<Atom, Atom> tbl;

  Atom operator()(const Atom& a) const;
  bool defined_on(const Atom& a) const { return tbl.count(a) > 0; }
  std::string str() const;
};

using AtomFns = std::vector<AtomFn>;

AtomFn identity_fn(const Universe& u);
AtomFn const_fn(const Universe& src, const Atom& target);
// The embedding of u into opt_universe(u).
AtomFn embed_fn(const Universe& u);
AtomFns embed_fns(const Universes& us);
// Projections defined on a pair universe.
AtomFn fst_fn(const Universe& pairs);
AtomFn snd_fn(const Universe& pairs);

// All |dst|^|src| functions, in deterministic order.  Throws
// resource_limit_error when the count would exceed `limit`.
std::vector<AtomFn> all_fns(const Universe& src, const Universe& dst, long limit);

// A finite relation between two universes.
struct AtomRel {
  std::set<std::pair<Atom, Atom>> pairs;

  bool contains(const Atom& a, const Atom& b) const { return pairs.count({a, b}) > 0; }
  bool empty() const { return pairs.empty(); }
  std::string str() const;
};

using AtomRels = std::vector<AtomRel>;

AtomRel identity_rel(const Universe& u);
AtomRel full_rel(const Universe& src, const Universe& dst);
AtomRel compose_rels(const AtomRel& r, const AtomRel& s);
AtomRels compose_rels(const AtomRels& rs, const AtomRels& ss);
AtomRel converse_rel(const AtomRel& r);

// The relation extended to the universes-with-a-fresh-point: embeds both
// sides and additionally relates "@" to "@".
AtomRel opt_extend(const AtomRel& r);
AtomRels opt_extend(const AtomRels& rs);

// The elements of a relation as a universe of pair atoms.
Universe rel_universe(const AtomRel& r);
Universes rel_universes(const AtomRels& rs);

// Either every relation between src and dst (when |src|*|dst| <=
// cfg.rel_exhaustive_max) or cfg.rel_samples seeded samples.  The bool
// reports whether the enumeration was exhaustive.
std::pair<std::vector<AtomRel>, bool> enumerate_rels(const Universe& src, const Universe& dst,
                                                     const CheckConfig& cfg, Rng& rng);

// All bijective renamings of u onto itself (every permutation of the atoms).
std::vector<AtomFn> all_permutations(const Universe& u);

}  // namespace qbnf

template <>
struct std::hash<qbnf::Atom> {
  std::size_t operator()(const qbnf::Atom& a) const { return a.hash(); }
};
