#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "qbnf/base_functors.hpp"
#include "qbnf/checks.hpp"
#include "qbnf/gallery.hpp"
#include "qbnf/laws.hpp"
#include "qbnf/witness.hpp"

using namespace qbnf;

namespace {

Atom A(int k) { return Atom::tok(k); }

CheckConfig cfg() { return CheckConfig{}; }

Val inl(const Atom& a) { return Val::node(Ct::inl, {Val::leaf(0, a)}); }
Val inr(const Atom& a) { return Val::node(Ct::inr, {Val::leaf(0, a)}); }

Witness wit(std::string name, std::vector<int> idx,
            std::function<Val(const std::vector<Atom>&)> build) {
  Witness w;
  w.name = std::move(name);
  w.indices = std::move(idx);
  w.build = std::move(build);
  return w;
}

Witness nil_witness() {
  return wit("nil", {}, [](const std::vector<Atom>&) { return mk_list({}); });
}

SubtypePred nonempty_pred() {
  SubtypePred p;
  p.name = "nonempty";
  p.pred = [](const Val& v) { return !list_elems_of(v).empty(); };
  return p;
}

// Example-14 field: lists containing at least one element twice.
SubtypePred dup_pred() {
  SubtypePred p;
  p.name = "has_dup";
  p.pred = [](const Val& v) {
    std::vector<Atom> el = list_elems_of(v);
    std::sort(el.begin(), el.end());
    return std::adjacent_find(el.begin(), el.end()) != el.end();
  };
  return p;
}

SubtypePred all_pred(const std::string& name) {
  SubtypePred p;
  p.name = name;
  p.pred = [](const Val&) { return true; };
  return p;
}

bool contains(const std::optional<std::string>& hay, const std::string& needle) {
  return hay && hay->find(needle) != std::string::npos;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("the witness property polices leaked atoms") {
  FunctorSpec f = list_functor();
  Universes us = token_universes(1, 2);

  CheckResult nil = wt_check(f, nil_witness(), us, cfg());
  CHECK(nil.status == Status::pass);
  CHECK(nil.cases == 1);

  Witness cons =
      wit("cons", {0}, [](const std::vector<Atom>& as) { return mk_list({as[0]}); });
  CHECK(wt_check(f, cons, us, cfg()).status == Status::pass);

  // A constant recipe leaks its hard-wired atom through the setter.
  Witness leaky = wit("leaky", {}, [](const std::vector<Atom>&) { return mk_list({A(0)}); });
  CheckResult lr = wt_check(f, leaky, us, cfg());
  CHECK(lr.status == Status::fail);
  CHECK(contains(lr.counterexample, "undeclared"));

  // Declaring the sort is not enough: the built atom must be the argument.
  Witness stubborn =
      wit("stubborn", {0}, [](const std::vector<Atom>&) { return mk_list({A(0)}); });
  CheckResult sr = wt_check(f, stubborn, us, cfg());
  CHECK(sr.status == Status::fail);
  CHECK(contains(sr.counterexample, "differs from the supplied argument"));

  CHECK_THROWS_AS(wt_check(f, wit("dup_idx", {0, 0}, nil_witness().build), us, cfg()),
                  malformed_value_error);
  CHECK_THROWS_AS(wt_check(f, wit("bad_sort", {1}, nil_witness().build), us, cfg()),
                  malformed_value_error);
}

TEST_CASE("quotients admit recipes their raw container rejects") {
  Universes us = token_universes(1, 3);
  QuotientSpec q = q_make_ok(sum_same_functor(), qp_equiv(), us, cfg());

  // The right injection is a witness before and after quotienting, and the
  // quotient setter still surrenders exactly the supplied atom.
  Witness right = wit("right", {0}, [](const std::vector<Atom>& as) { return inr(as[0]); });
  CHECK(wt_check(sum_same_functor(), right, us, cfg()).status == Status::pass);
  auto lifted = wt_lift(q, right, us, cfg());
  REQUIRE(std::holds_alternative<Witness>(lifted));
  CHECK(wt_check(q, std::get<Witness>(lifted), us, cfg()).status == Status::pass);

  // A constant left injection leaks its atom raw, but the collapsed class
  // forgets it: the quotient gains a witness that demands nothing.
  Witness none = wit("none", {}, [](const std::vector<Atom>&) { return inl(A(0)); });
  CHECK(wt_check(sum_same_functor(), none, us, cfg()).status == Status::fail);
  auto lifted_none = wt_lift(q, none, us, cfg());
  REQUIRE(std::holds_alternative<Witness>(lifted_none));
  Witness wn = std::get<Witness>(lifted_none);
  CHECK(wn.indices.empty());
  CHECK(wt_check(q, wn, us, cfg()).status == Status::pass);

  // Lifting re-checks: a recipe that leaks even on the quotient is refused.
  QuotientSpec fq = q_make_ok(list_functor(), fset_equiv(), token_universes(1, 2), cfg());
  Witness pad = wit("pad", {0}, [](const std::vector<Atom>& as) {
    return mk_list({as[0], A(0)});
  });
  auto refused = wt_lift(fq, pad, token_universes(1, 2), cfg());
  REQUIRE(std::holds_alternative<Refusal>(refused));
  CHECK(std::get<Refusal>(refused).check == "witness_property");
  CHECK_FALSE(std::get<Refusal>(refused).detail.empty());

  auto lifted_nil = wt_lift(fq, nil_witness(), token_universes(1, 2), cfg());
  REQUIRE(std::holds_alternative<Witness>(lifted_nil));
  CHECK(std::get<Witness>(lifted_nil).build({}) == mk_list({}));
}

TEST_CASE("terminated sequences forget the terminator witness at infinity") {
  Universes us = token_universes(2, 2);
  QuotientSpec q = q_make_ok(tllist_functor(), tllist_equiv(), us, cfg());

  // The nil recipe asks for a terminator and exposes exactly it.
  Witness tlnil = wit("tlnil", {1}, [](const std::vector<Atom>& as) {
    return mk_tll(mk_fin({}), as[0]);
  });
  CHECK(wt_check(tllist_functor(), tlnil, us, cfg()).status == Status::pass);
  auto lifted_nil = wt_lift(q, tlnil, us, cfg());
  REQUIRE(std::holds_alternative<Witness>(lifted_nil));

  // The constant-stream recipe must invent a terminator, and the raw setter
  // betrays the invention.
  Witness tlconst = wit("tlconst", {0}, [](const std::vector<Atom>& as) {
    return mk_tll(mk_stream({}, {as[0]}), A(0));
  });
  CheckResult raw = wt_check(tllist_functor(), tlconst, us, cfg());
  CHECK(raw.status == Status::fail);
  CHECK(contains(raw.counterexample, "sort-1"));
  CHECK(contains(raw.counterexample, "undeclared"));

  // On the quotient the terminator of an infinite sequence is unobservable,
  // so the same recipe becomes a witness.
  auto lifted_const = wt_lift(q, tlconst, us, cfg());
  REQUIRE(std::holds_alternative<Witness>(lifted_const));
  CHECK(wt_check(q, std::get<Witness>(lifted_const), us, cfg()).status == Status::pass);
  for (const Atom& a : us[0].atoms) {
    QSet s = q.set_at(1, std::get<Witness>(lifted_const).build({a}), us, cfg());
    CHECK(s.atoms.empty());
    CHECK(s.exact);
  }
}

TEST_CASE("subsumption keeps the least demanding recipes") {
  auto nil = nil_witness();
  Witness cons =
      wit("cons", {0}, [](const std::vector<Atom>& as) { return mk_list({as[0]}); });
  Witness tlnil = wit("tlnil", {1}, nullptr);
  Witness tlconst = wit("tlconst", {0}, nullptr);

  std::vector<Witness> m1 = wt_minimal({nil, cons});
  REQUIRE(m1.size() == 1);
  CHECK(m1[0].name == "nil");

  CHECK(wt_minimal({cons}).size() == 1);

  // Incomparable index sets both survive, ordered by their demands.
  std::vector<Witness> m2 = wt_minimal({tlnil, tlconst});
  REQUIRE(m2.size() == 2);
  CHECK(m2[0].name == "tlconst");
  CHECK(m2[1].name == "tlnil");

  // Equal demands: the lexicographically least name wins; duplicates fold.
  std::vector<Witness> m3 = wt_minimal({wit("beta", {0}, nullptr), wit("alpha", {0}, nullptr)});
  REQUIRE(m3.size() == 1);
  CHECK(m3[0].name == "alpha");
  CHECK(wt_minimal({wit("alpha", {0}, nullptr), wit("alpha", {0}, nullptr)}).size() == 1);

  // Idempotent and order-independent.
  std::vector<Witness> all{nil, cons, tlnil, tlconst};
  std::vector<Witness> once = wt_minimal(all);
  std::vector<Witness> twice = wt_minimal(once);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].name == twice[i].name);
  std::vector<Witness> rev(all.rbegin(), all.rend());
  std::vector<Witness> from_rev = wt_minimal(rev);
  REQUIRE(once.size() == from_rev.size());
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i].name == from_rev[i].name);
}

TEST_CASE("subtype admission checks both inheritance conditions") {
  FunctorSpec f = list_functor();
  Universes us = token_universes(1, 2);

  auto ne = st_make(f, nonempty_pred(), cfg());
  REQUIRE(std::holds_alternative<FunctorSpec>(ne));
  const FunctorSpec& nf = std::get<FunctorSpec>(ne);
  CHECK(nf.name == "list|nonempty");
  std::vector<Val> vs = enumerate_vals(nf, us, 2);
  CHECK(vs.size() == 6);  // [a],[b] and the four two-element lists
  for (const Val& v : vs) CHECK_FALSE(list_elems_of(v).empty());
  CHECK(laws_bnf(nf, us, cfg()).all_pass());

  // The always-true field changes nothing but the name.
  auto at = st_make(f, all_pred("all"), cfg());
  REQUIRE(std::holds_alternative<FunctorSpec>(at));
  CHECK(enumerate_vals(std::get<FunctorSpec>(at), us, 3) == enumerate_vals(f, us, 3));

  // A field keyed to one concrete atom is not closed under the mapper.
  SubtypePred pinned;
  pinned.name = "mentions_first";
  pinned.pred = [](const Val& v) {
    std::vector<Atom> el = list_elems_of(v);
    return std::find(el.begin(), el.end(), A(0)) != el.end();
  };
  auto pin = st_make(f, pinned, cfg());
  REQUIRE(std::holds_alternative<Refusal>(pin));
  CHECK(std::get<Refusal>(pin).check == "subtype_condition_1");

  // Duplication-somewhere projects onto two duplicated lists whose only
  // common refinement has three distinct pairs, so the pullback witness is
  // missing.
  auto dup = st_make(f, dup_pred(), cfg());
  REQUIRE(std::holds_alternative<Refusal>(dup));
  CHECK(std::get<Refusal>(dup).check == "subtype_condition_2");
  const std::string& detail = std::get<Refusal>(dup).detail;
  CHECK(contains(detail, "(a,a)"));
  CHECK(contains(detail, "(a,b)"));
  CHECK(contains(detail, "(b,a)"));
}

TEST_CASE("partial quotients attribute refusals to their stage") {
  FunctorSpec f = list_functor();
  Universes us = token_universes(1, 2);

  auto pq = st_partial_quotient(f, nonempty_pred(), fset_equiv(), cfg());
  REQUIRE(std::holds_alternative<QuotientSpec>(pq));
  QuotientSpec q = std::get<QuotientSpec>(pq);
  CHECK(q.same(mk_list({A(0), A(1)}), mk_list({A(1), A(0)})));
  // Nonempty subsets of the two-atom universe: {a}, {b}, {a,b}.
  CHECK(q.enumerate(us, 3, cfg()).size() == 3);

  auto dup = st_partial_quotient(f, dup_pred(), equality_equiv(), cfg());
  REQUIRE(std::holds_alternative<Refusal>(dup));
  CHECK(std::get<Refusal>(dup).check == "subtype_condition_2");

  // A quotient-stage failure reports the violated precondition.
  EquivSpec lopsided;
  lopsided.name = "lopsided";
  lopsided.decide = [](const Val& x, const Val& y) {
    return x == y || (list_elems_of(x).size() == 1 && list_elems_of(y).size() == 2);
  };
  lopsided.neighbors = [](const Val&, const Universes&) { return std::vector<Val>{}; };
  auto bad = st_partial_quotient(f, nonempty_pred(), lopsided, cfg());
  REQUIRE(std::holds_alternative<Refusal>(bad));
  CHECK(std::get<Refusal>(bad).check == "quotient equivp");

  // Streams-with-finite-differences factor through the trivial subtype.
  auto fae = st_partial_quotient(upstream_functor(), all_pred("up"), fae_equiv(), cfg());
  REQUIRE(std::holds_alternative<QuotientSpec>(fae));
  QuotientSpec uq = std::get<QuotientSpec>(fae);
  CHECK(uq.same(mk_stream({}, {A(0)}), mk_stream({A(1)}, {A(0)})));
  CHECK_FALSE(uq.same(mk_stream({}, {A(0)}), mk_stream({}, {A(1)})));
}

TEST_CASE("the admitted relator refuses witnesses outside the field") {
  FunctorSpec rd = st_restrict(list_functor(), dup_pred());
  Universes us = token_universes(1, 2);
  AtomRels full{full_rel(us[0], us[0])};

  Val x = mk_list({A(0), A(0), A(1)});
  Val z = mk_list({A(0), A(1), A(0)});
  // The pointwise pairing of x with itself repeats a pair, so it is a member;
  // the pairing of x with z has three distinct pairs and is not.
  CHECK(rel_tri(rd, full, x, x, cfg()) == Tri::yes);
  CHECK(rel_tri(rd, full, x, z, cfg()) == Tri::no);

  // Relator composition breaks exactly the Example-14 way: both hops have
  // duplicated witnesses, the combined one would not.
  CheckResult r = check_subdistributivity(rd, equality_equiv(), us, cfg());
  CHECK(r.status == Status::fail);
  CHECK(contains(r.counterexample, "[a,a,b]"));
  CHECK(contains(r.counterexample, "[a,b,a]"));
}
