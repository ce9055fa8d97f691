#pragma once
#include <string>
#include <utility>
#include <vector>

#include "qbnf/base_functors.hpp"

namespace qbnf {

// --- language structure -----------------------------------------------------

// Does r accept the empty word?
bool nullable(const Val& r);

// Left derivative: the language of words w with a.w accepted by r.  Standard
// structural equations, no simplification of the result.
Val deriv(const Atom& a, const Val& r);

// Language membership by naive recursion over all split points; the oracle
// every other regex operation is validated against.
bool match_oracle(const Val& r, const std::vector<Atom>& w);

// --- the two regex equivalences ----------------------------------------------

// Canonical form for alternation-associativity/commutativity/idempotence:
// Alt-spines are flattened (at every depth), deduplicated, sorted by term
// order, and rebuilt right-nested.  Two terms are ACI-equivalent iff their
// canonical forms are equal.
Val aci_canonical(const Val& r);

// Zero elimination: drops Zero alternatives (recursing into both branches)
// and collapses concatenations with a Zero left part (recursing only left);
// anything else is returned unchanged.
Val elim_zeros(const Val& r);

// Distributes r over t from the right: alternations split, concatenations
// push into their left part, and any other r becomes Conc r t.
Val distribute(const Val& t, const Val& r);

// One-step successors of the ACI rewrite: alternation reassociation (both
// directions), commutation, duplication (r to Alt r r), the value itself, and
// full congruence (both Alt arguments, both Conc arguments, under Star).
std::vector<Val> aci_step(const Val& r);

// One-step successors of the restricted rewrite for the Zero/distribution
// equivalence: the ACI alternation rules plus Conc r s to distribute s r,
// every successor also in Zero-eliminated form; congruence only in Alt
// arguments and a concatenation's left argument, never under Star.
std::vector<Val> acidz_step(const Val& r);

// --- derivative automata ------------------------------------------------------

struct Dfa {
  std::vector<Val> states;             // ACI-canonical forms; index 0 is the start
  std::vector<std::vector<int>> next;  // next[state][letter position in alphabet]
  std::vector<bool> accepting;
  Universe alphabet;
};

// Worklist exploration of aci_canonical(deriv(a, s)) from aci_canonical(r).
// Throws resource_limit_error if more than state_limit states appear.
Dfa build_dfa(const Val& r, const Universe& alphabet, int state_limit);

// GraphViz rendering; node names follow the canonical term order of the
// states, so equal automata print identically.
std::string to_dot(const Dfa& d);

// Concrete syntax: '0' empty language, 'e' empty word, letters by position in
// the alphabet ('a' first), '|' alternation, juxtaposition concatenation, '*'
// iteration, parentheses; star binds tightest, then juxtaposition, then '|'.
// Throws std::invalid_argument on malformed input.
Val parse_regex(const std::string& text, const Universe& alphabet);

// The fixed set of larger sample patterns (name, syntax) over {a,b} used by
// the automaton sweeps.
std::vector<std::pair<std::string, std::string>> named_patterns();

}  // namespace qbnf
