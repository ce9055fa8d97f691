#pragma once
#include <vector>

#include "qbnf/functor.hpp"

namespace qbnf {

// The container zoo.  Arities: list/pair_same/sum_same/option/regex/upstream
// are one-sorted; product/sum/tllist are two-sorted.
FunctorSpec list_functor();       // finite lists, size = length
FunctorSpec product_functor();    // one pair (a, b) with a of sort 0, b of sort 1
FunctorSpec pair_same_functor();  // one pair (a, b), both of sort 0
FunctorSpec sum_functor();        // Inl a (sort 0) | Inr b (sort 1)
FunctorSpec sum_same_functor();   // Inl a | Inr a, both of sort 0
FunctorSpec option_functor();     // None | Some a
FunctorSpec regex_functor();      // regular expressions over sort-0 letters
FunctorSpec tllist_functor();     // (sequence of sort-0 elements, sort-1 terminator);
                                  // the sequence is either a finite list or an
                                  // eventually periodic stream in canonical form
FunctorSpec upstream_functor();   // eventually periodic streams alone

// --- list helpers ---
Val mk_list(const std::vector<Atom>& elems, int sort = 0);
std::vector<Atom> list_elems_of(const Val& list);

// --- sequence-model helpers ---
Val mk_fin(const std::vector<Atom>& elems);
Val mk_stream(const std::vector<Atom>& prefix, const std::vector<Atom>& cycle);
Val mk_tll(const Val& stream, const Atom& terminator);
bool stream_is_infinite(const Val& stream);
int stream_prefix_len(const Val& stream);
int stream_cycle_len(const Val& stream);
// Element at position k; only valid positions for finite sequences.
Atom stream_at(const Val& stream, int k);
// Canonical form: cycle reduced to its primitive root, prefix tail folded
// into the cycle.  Canonical forms are equal iff the streams are equal.
Val up_canonical(const Val& stream);
bool up_is_canonical(const Val& stream);

// --- regex builders ---
Val re_zero();
Val re_eps();
Val re_atom(const Atom& a);
Val re_alt(const Val& r, const Val& s);
Val re_conc(const Val& r, const Val& s);
Val re_star(const Val& r);

}  // namespace qbnf
