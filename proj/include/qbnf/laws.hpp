#pragma once
#include "qbnf/quotient.hpp"

namespace qbnf {

// The functor-law suite: map_id, map_comp, set_map, map_cong, set_finite
// (the finiteness stand-in for the cardinality-bound axioms), in_rel (the
// relator agrees with its mapper/setter characterization), and rel_comp (the
// relator distributes over relation composition, both inclusions).  The same
// suite runs over a raw container and over a quotient; for the quotient every
// operation is the lifted one and equality is the equivalence.
EntryReport laws_bnf(const FunctorSpec& f, const Universes& us, const CheckConfig& cfg);
EntryReport laws_bnf(const QuotientSpec& q, const Universes& us, const CheckConfig& cfg);

}  // namespace qbnf
