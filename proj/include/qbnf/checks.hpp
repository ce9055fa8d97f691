#pragma once
#include "qbnf/equiv.hpp"
#include "qbnf/functor.hpp"
#include "qbnf/report.hpp"

namespace qbnf {

// Bounded checkers for the conditions an equivalence must (or may) satisfy
// for the quotient container to inherit the container laws.  Each checker
// sweeps the values of `f` enumerated over `us` up to cfg.size and reports
// pass, fail-with-counterexample, or resource when a truncated class
// enumeration prevented a verdict.

// ~ is reflexive, symmetric, transitive on the enumerated values.
CheckResult check_equivp(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                         const CheckConfig& cfg);

// x ~ y implies map g x ~ map g y for every function tuple over the universes.
CheckResult check_map_respect(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                              const CheckConfig& cfg);

// x ~ y implies identical per-sort atom sets.  Optional: quotients whose
// equivalence fails this still get setters, via class intersection.
CheckResult check_set_respect(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                              const CheckConfig& cfg);

// For every nonempty family of atom sets with nonempty intersection, a value
// whose class meets every [F restricted to A] also has a class member whose
// atoms sit inside the intersection.
CheckResult check_wide_intersection(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                                    const CheckConfig& cfg);

// Preimage preservation: a class member of map g x inside F<A> forces a class
// member of x inside F<g^-1(A)>.
CheckResult check_preimage(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                           const CheckConfig& cfg);

// rel R ; ~ ; rel S  is contained in  ~ ; rel (R o S) ; ~   whenever every
// per-sort composition R_i o S_i is nonempty.  With e = equality this is the
// relator composition law for the raw container.
CheckResult check_subdistributivity(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                                    const CheckConfig& cfg);

// The decision procedure is invariant under renaming atoms: for every
// permutation tuple p of the universes (and of their one-point extensions),
// decide(x, y) == decide(map p x, map p y).
CheckResult check_equiv_naturality(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                                   const CheckConfig& cfg);

// All of the above in a fixed order.  set_respect runs over universes of
// cfg.set_respect_universe tokens; the rest use `us` as given.
std::vector<CheckResult> check_all_conditions(const FunctorSpec& f, const EquivSpec& e,
                                              const Universes& us, const CheckConfig& cfg);

}  // namespace qbnf
