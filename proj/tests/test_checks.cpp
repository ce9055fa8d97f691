#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "qbnf/base_functors.hpp"
#include "qbnf/checks.hpp"
#include "qbnf/functor.hpp"
#include "qbnf/gallery.hpp"
#include "qbnf/laws.hpp"
#include "qbnf/regex.hpp"

using namespace qbnf;

namespace {

Atom A(int k) { return Atom::tok(k); }

CheckConfig cfg() { return CheckConfig{}; }

Universes us1(int n) { return token_universes(1, n); }

// Lists declared equivalent when they have the same atoms or both avoid the
// first atom; an equivalence, but renaming atoms breaks it.
EquivSpec avoider() {
  EquivSpec e;
  e.name = "avoider";
  e.decide = [](const Val& x, const Val& y) {
    AtomSet sx = set_at(list_functor(), 0, x), sy = set_at(list_functor(), 0, y);
    if (sx == sy) return true;
    return !sx.count(A(0)) && !sy.count(A(0));
  };
  e.neighbors = [](const Val&, const Universes&) { return std::vector<Val>{}; };
  return e;
}

EquivSpec lopsided() {
  EquivSpec e;
  e.name = "lopsided";
  e.decide = [](const Val& x, const Val& y) {
    return x == y || (list_elems_of(x).size() == 1 && list_elems_of(y).size() == 2);
  };
  e.neighbors = [](const Val&, const Universes&) { return std::vector<Val>{}; };
  return e;
}

}  // namespace

TEST_CASE("equivalence checker rejects a lopsided relation") {
  CheckResult r = check_equivp(list_functor(), lopsided(), us1(2), cfg());
  CHECK(r.status == Status::fail);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.cases > 0);
  CHECK(check_equivp(list_functor(), fset_equiv(), us1(2), cfg()).status == Status::pass);
}

TEST_CASE("mapper-respect checker finds renaming collapses") {
  CheckResult r = check_map_respect(list_functor(), avoider(), us1(2), cfg());
  CHECK(r.status == Status::fail);
  CHECK(r.counterexample.has_value());

  CHECK(check_map_respect(list_functor(), fset_equiv(), us1(2), cfg()).status == Status::pass);
  CHECK(check_map_respect(list_functor(), cyclist_equiv(), us1(2), cfg()).status ==
        Status::pass);
  CHECK(check_map_respect(sum_same_functor(), qp_equiv(), us1(2), cfg()).status ==
        Status::pass);
  CHECK(check_map_respect(regex_functor(), acidz_equiv(cfg()), us1(2), cfg()).status ==
        Status::pass);
}

TEST_CASE("setter-respect outcomes across the zoo") {
  CheckConfig c = cfg();
  Universes u3 = us1(3);

  CHECK(check_set_respect(list_functor(), fset_equiv(), u3, c).status == Status::pass);
  CHECK(check_set_respect(list_functor(), dlist_equiv(), u3, c).status == Status::pass);
  CHECK(check_set_respect(list_functor(), cyclist_equiv(), u3, c).status == Status::pass);
  CHECK(check_set_respect(pair_same_functor(), upair_equiv(), u3, c).status == Status::pass);
  CHECK(check_set_respect(regex_functor(), aci_equiv(), u3, c).status == Status::pass);

  CheckResult qp = check_set_respect(sum_same_functor(), qp_equiv(), u3, c);
  CHECK(qp.status == Status::fail);
  REQUIRE(qp.counterexample.has_value());
  CHECK(qp.counterexample->find("Inl") != std::string::npos);

  // Dropping a zero concatenation loses its atoms.
  CheckResult dz = check_set_respect(regex_functor(), acidz_equiv(c), u3, c);
  CHECK(dz.status == Status::fail);
  CHECK(dz.counterexample.has_value());

  CheckResult tll =
      check_set_respect(tllist_functor(), tllist_equiv(), token_universes(2, 3), c);
  CHECK(tll.status == Status::fail);

  // Patching finitely many stream positions changes the atom set.
  CheckResult fae = check_set_respect(upstream_functor(), fae_equiv(), u3, c);
  CHECK(fae.status == Status::fail);
}

TEST_CASE("wide intersection and preimage preservation hold for honest equivalences") {
  CheckConfig c = cfg();
  CHECK(check_wide_intersection(list_functor(), fset_equiv(), us1(3), c).status ==
        Status::pass);
  CHECK(check_wide_intersection(pair_same_functor(), upair_equiv(), us1(3), c).status ==
        Status::pass);
  CHECK(check_preimage(list_functor(), fset_equiv(), us1(3), c).status == Status::pass);
  CHECK(check_preimage(pair_same_functor(), upair_equiv(), us1(3), c).status == Status::pass);
}

TEST_CASE("subdistributivity at desk scale") {
  CheckConfig c = cfg();
  CHECK(check_subdistributivity(list_functor(), equality_equiv(), us1(2), c).status ==
        Status::pass);
  CHECK(check_subdistributivity(list_functor(), fset_equiv(), us1(2), c).status ==
        Status::pass);
  CHECK(check_subdistributivity(pair_same_functor(), upair_equiv(), us1(2), c).status ==
        Status::pass);

  // Determinism: sampled relations are replayable from the seed.
  CheckResult r1 = check_subdistributivity(list_functor(), fset_equiv(), us1(2), c);
  CheckResult r2 = check_subdistributivity(list_functor(), fset_equiv(), us1(2), c);
  CHECK(r1.status == r2.status);
  CHECK(r1.cases == r2.cases);
  CHECK(r1.counterexample == r2.counterexample);
}

TEST_CASE("naturality of the decision procedure under renamings") {
  CHECK(check_equiv_naturality(list_functor(), fset_equiv(), us1(2), cfg()).status ==
        Status::pass);
  CheckResult r = check_equiv_naturality(list_functor(), avoider(), us1(2), cfg());
  CHECK(r.status == Status::fail);
  CHECK(r.counterexample.has_value());
}

TEST_CASE("the full condition sweep is ordered and reproducible") {
  std::vector<CheckResult> rs =
      check_all_conditions(list_functor(), fset_equiv(), us1(2), cfg());
  REQUIRE(rs.size() == 7);
  CHECK(rs[0].law == "equivp");
  CHECK(rs[1].law == "map_respect");
  CHECK(rs[2].law == "set_respect");
  CHECK(rs[3].law == "wide_intersection");
  CHECK(rs[4].law == "preimage_preservation");
  CHECK(rs[5].law == "subdistributivity");
  CHECK(rs[6].law == "equiv_naturality");
  for (const CheckResult& r : rs) CHECK(r.status == Status::pass);
}

TEST_CASE("law suite flags a mapper that loses elements") {
  FunctorSpec broken = list_functor();
  broken.map_impl = [](const FunctorSpec&, const AtomFns& fns, const Val& x) {
    std::vector<Atom> el = list_elems_of(fmap(list_functor(), fns, x));
    if (!el.empty()) el.pop_back();
    return mk_list(el);
  };
  EntryReport rep = laws_bnf(broken, us1(2), cfg());
  CHECK_FALSE(rep.all_pass());
  const CheckResult* mid = rep.find("map_id");
  REQUIRE(mid != nullptr);
  CHECK(mid->status == Status::fail);
  REQUIRE(mid->counterexample.has_value());
  // The smallest violation: the one-element list maps to the empty list.
  CHECK(mid->counterexample->find("[a]") != std::string::npos);
  const CheckResult* sm = rep.find("set_map");
  REQUIRE(sm != nullptr);
  CHECK(sm->status == Status::fail);
}

TEST_CASE("law suite flags a relator that ignores its relation") {
  // Claims relatedness only for identical values, whatever the relation says;
  // a genuine witness then projects onto a pair the relator denies.
  FunctorSpec lying = list_functor();
  lying.rel_fast = [](const FunctorSpec&, const AtomRels&, const Val& x, const Val& y) {
    return std::optional<bool>(x == y);
  };
  EntryReport rep = laws_bnf(lying, us1(2), cfg());
  const CheckResult* ir = rep.find("in_rel");
  REQUIRE(ir != nullptr);
  CHECK(ir->status == Status::fail);
  CHECK(ir->counterexample.has_value());
}

TEST_CASE("law suite passes the honest containers") {
  CheckConfig c = cfg();
  for (FunctorSpec f : {list_functor(), option_functor(), pair_same_functor(),
                        sum_same_functor(), regex_functor()}) {
    EntryReport rep = laws_bnf(f, token_universes(f.arity, c.universe), c);
    CAPTURE(f.name);
    CHECK(rep.all_pass());
    // One substituted finiteness axiom, clearly marked.
    const CheckResult* fin = rep.find("set_finite");
    REQUIRE(fin != nullptr);
    CHECK(fin->substituted_axiom);
  }
}
