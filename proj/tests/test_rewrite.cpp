#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qbnf/base_functors.hpp"
#include "qbnf/gallery.hpp"
#include "qbnf/regex.hpp"
#include "qbnf/rewrite.hpp"

using namespace qbnf;

namespace {

Atom A(int k) { return Atom::tok(k); }

Val word(const std::string& w) {
  std::vector<Atom> el;
  for (char c : w) el.push_back(A(c - 'a'));
  return mk_list(el);
}

CheckConfig cfg() { return CheckConfig{}; }

Universes us1(int n) { return token_universes(1, n); }

bool contains(const std::vector<Val>& vs, const Val& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

}  // namespace

TEST_CASE("reachability grows monotonically and includes the seed") {
  CheckConfig c = cfg();
  Universes u = us1(2);

  CHECK(rw_reachable(rw_rotate(), word("ab"), 0, u, c) == std::vector<Val>{word("ab")});

  std::vector<Val> orbit = rw_reachable(rw_rotate(), word("ab"), 2, u, c);
  CHECK(orbit == std::vector<Val>({word("ab"), word("ba")}));

  Universes ua = us1(1);
  std::vector<Val> ins = rw_reachable(rw_dlist_inserting(), word("a"), 1, ua, c);
  CHECK(ins == std::vector<Val>({word("a"), word("aa")}));

  std::vector<Val> prev;
  for (int d = 0; d <= 3; ++d) {
    std::vector<Val> r = rw_reachable(rw_fim(), word("ab"), d, u, c);
    CHECK(contains(r, word("ab")));
    for (const Val& v : prev) CHECK(contains(r, v));
    prev = r;
  }

  CheckConfig tight = cfg();
  tight.reach_node_cap = 3;
  CHECK_THROWS_AS(rw_reachable(rw_fim(), word("ab"), 4, u, tight), resource_limit_error);
}

TEST_CASE("joinability finds common reducts and refuses to guess") {
  CheckConfig c = cfg();
  Universes u = us1(3);

  CHECK(rw_joinable(rw_rotate(), word("ab"), word("ab"), 0, u, c) == word("ab"));
  CHECK(rw_joinable(rw_rotate(), word("ab"), word("ba"), 2, u, c).has_value());

  // The two normal forms of the collapsing orientation rejoin under the
  // duplicating orientation, and only under it.
  CHECK(rw_joinable(rw_fim(), word("abc"), word("abcbabc"), 4, u, c).has_value());
  CHECK_FALSE(rw_joinable(rw_fim_collapsing(), word("abc"), word("abcbabc"), 4, u, c)
                  .has_value());
}

TEST_CASE("the collapsing word rewrite is not confluent") {
  CheckConfig c = cfg();
  Universes u = us1(3);
  Val peak = word("ababcbabc");

  std::vector<Val> succ = rw_fim_collapsing().step(peak, u);
  CHECK(contains(succ, word("abcbabc")));  // drop the doubled "ab" up front
  CHECK(contains(succ, word("ababc")));    // drop one "babc" of the doubled tail

  std::vector<Val> nf;
  for (const Val& v : rw_reachable(rw_fim_collapsing(), peak, 6, u, c))
    if (rw_fim_collapsing().step(v, u).empty()) nf.push_back(v);
  CHECK(nf == std::vector<Val>({word("abc"), word("abcbabc")}));
}

TEST_CASE("step functions are natural under renaming") {
  CheckConfig c = cfg();
  Universes u = us1(2);
  AtomFn swap;
  swap.tbl[A(0)] = A(1);
  swap.tbl[A(1)] = A(0);
  AtomFns fns{swap};
  for (const RewriteSystem& s : {rw_dlist_removing(), rw_dlist_inserting(), rw_rotate(),
                                 rw_fim(), rw_fim_collapsing(), rw_fset_moves()}) {
    for (const Val& x : enumerate_vals(list_functor(), u, c.size)) {
      std::vector<Val> renamed;
      for (const Val& y : s.step(x, u)) renamed.push_back(fmap(list_functor(), fns, y));
      std::sort(renamed.begin(), renamed.end());
      std::vector<Val> stepped = s.step(fmap(list_functor(), fns, x), u);
      std::sort(stepped.begin(), stepped.end());
      CAPTURE(s.name);
      CHECK(renamed == stepped);
    }
  }
}

TEST_CASE("certificates for the quotients that ride on a rewrite") {
  CheckConfig c = cfg();

  ConfluenceCertificate dl =
      certify_subdistributivity(rw_dlist_inserting(), dlist_equiv(), list_functor(), c);
  CHECK(dl.certified);
  REQUIRE(dl.find("strong_confluence") != nullptr);
  CHECK(dl.find("strong_confluence")->status == Status::pass);
  CHECK(dl.find("closure_containment")->status == Status::pass);
  CHECK(dl.find("projection_factoring")->status == Status::pass);
  CHECK(dl.find("steps_within_equivalence")->status == Status::pass);

  ConfluenceCertificate rot =
      certify_subdistributivity(rw_rotate(), cyclist_equiv(), list_functor(), c);
  CHECK(rot.certified);

  ConfluenceCertificate fs =
      certify_subdistributivity(rw_fset_moves(), fset_equiv(), list_functor(), c);
  CHECK(fs.certified);
}

TEST_CASE("the removing orientation is refused at projection factoring") {
  ConfluenceCertificate rm =
      certify_subdistributivity(rw_dlist_removing(), dlist_equiv(), list_functor(), cfg());
  CHECK_FALSE(rm.certified);
  const CertFragment* pf = rm.find("projection_factoring");
  REQUIRE(pf != nullptr);
  CHECK(pf->status == Status::fail);
  REQUIRE(pf->counterexample.has_value());
  // The two-element pair list whose first components are equal: its
  // projection drops a duplicate that the pair level cannot drop.
  CHECK(pf->counterexample->find("(a,a)") != std::string::npos);
  CHECK(pf->counterexample->find("(a,b)") != std::string::npos);
  // The same orientation joins fine: confluence is not what fails.
  CHECK(rm.find("strong_confluence")->status == Status::pass);
}

TEST_CASE("certificates for the word and regex systems") {
  CheckConfig c = cfg();
  ConfluenceCertificate fim =
      certify_subdistributivity(rw_fim(), fim_equiv(), list_functor(), c);
  CHECK(fim.certified);

  CheckConfig rc = cfg();
  rc.size = 4;
  ConfluenceCertificate aci =
      certify_subdistributivity(rw_aci(), aci_equiv(), regex_functor(), rc);
  CHECK(aci.certified);
  CHECK(aci.find("strong_confluence")->mode == "strong");

  ConfluenceCertificate dz =
      certify_subdistributivity(rw_acidz(), acidz_equiv(rc), regex_functor(), rc);
  CHECK(dz.certified);
}

TEST_CASE("certificates are deterministic") {
  CheckConfig c = cfg();
  ConfluenceCertificate a =
      certify_subdistributivity(rw_dlist_removing(), dlist_equiv(), list_functor(), c);
  ConfluenceCertificate b =
      certify_subdistributivity(rw_dlist_removing(), dlist_equiv(), list_functor(), c);
  REQUIRE(a.fragments.size() == b.fragments.size());
  for (size_t i = 0; i < a.fragments.size(); ++i) {
    CHECK(a.fragments[i].status == b.fragments[i].status);
    CHECK(a.fragments[i].cases == b.fragments[i].cases);
    CHECK(a.fragments[i].counterexample == b.fragments[i].counterexample);
  }
}
