#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qbnf/base_functors.hpp"
#include "qbnf/functor.hpp"
#include "qbnf/regex.hpp"
#include "qbnf/value.hpp"

using namespace qbnf;

namespace {

Atom A(int k) { return Atom::tok(k); }

Universe ab() { return Universe::tokens(2); }

std::vector<Val> regexes_up_to(int bound) {
  return enumerate_vals(regex_functor(), {ab()}, bound);
}

// All words over {a,b} of length <= n.
std::vector<std::vector<Atom>> words_up_to(int n) {
  std::vector<std::vector<Atom>> out{{}};
  size_t lo = 0;
  for (int len = 1; len <= n; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (int c = 0; c < 2; ++c) {
        std::vector<Atom> w = out[i];
        w.push_back(A(c));
        out.push_back(w);
      }
    lo = hi;
  }
  return out;
}

// Bounded closure of one-step successors: depth-limited, members capped in
// size relative to the seed.  This is the reference against which the
// canonical form's claim to capture the equivalence is judged.
std::set<Val> bounded_closure(const Val& seed, std::vector<Val> (*step)(const Val&), int depth,
                              int slack) {
  std::set<Val> seen{seed};
  std::vector<Val> frontier{seed};
  int cap = node_count(seed) + slack;
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Val> next;
    for (const Val& v : frontier)
      for (const Val& w : step(v)) {
        if (node_count(w) > cap) continue;
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return seen;
}

bool closures_intersect(const std::set<Val>& x, const std::set<Val>& y) {
  const std::set<Val>& small = x.size() <= y.size() ? x : y;
  const std::set<Val>& big = x.size() <= y.size() ? y : x;
  for (const Val& v : small)
    if (big.count(v)) return true;
  return false;
}

// Fully parenthesized concrete syntax, inverse of the parser.
std::string render(const Val& r) {
  switch (r.ct) {
    case Ct::rzero:
      return "0";
    case Ct::reps:
      return "e";
    case Ct::ratom:
      return std::string(1, static_cast<char>('a' + r.kids[0].atom.tok_value()));
    case Ct::ralt:
      return "(" + render(r.kids[0]) + "|" + render(r.kids[1]) + ")";
    case Ct::rconc:
      return "(" + render(r.kids[0]) + render(r.kids[1]) + ")";
    default:
      return "(" + render(r.kids[0]) + ")*";
  }
}

bool dfa_accepts(const Dfa& d, const std::vector<Atom>& w) {
  int s = 0;
  for (const Atom& a : w) {
    int pos = -1;
    for (size_t i = 0; i < d.alphabet.atoms.size(); ++i)
      if (d.alphabet.atoms[i] == a) pos = static_cast<int>(i);
    REQUIRE(pos >= 0);
    s = d.next[s][pos];
  }
  return d.accepting[s];
}

struct DotShape {
  std::set<std::string> nodes;
  long node_lines = 0;
  long edge_lines = 0;
  bool well_formed = true;
};

// Minimal structural validation of the DOT output: brace-delimited digraph,
// node declarations before use, every edge endpoint declared.
DotShape check_dot(const std::string& text) {
  DotShape d;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  if (lines.empty() || lines.front() != "digraph dfa {" || lines.back() != "}") {
    d.well_formed = false;
    return d;
  }
  for (size_t i = 1; i + 1 < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string first, second;
    ls >> first >> second;
    if (second == "->") {
      std::string target;
      ls >> target;
      if (!target.empty() && target.back() == ';') target.pop_back();
      if (!d.nodes.count(first) || !d.nodes.count(target)) d.well_formed = false;
      ++d.edge_lines;
    } else if (second.rfind("[shape=", 0) == 0) {
      d.nodes.insert(first);
      if (first != "start") ++d.node_lines;
    } else if (first == "rankdir=LR;") {
      continue;
    } else {
      d.well_formed = false;
    }
  }
  return d;
}

}  // namespace

TEST_CASE("nullable matches the empty-word oracle") {
  CHECK(nullable(re_eps()));
  CHECK_FALSE(nullable(re_conc(re_atom(A(0)), re_star(re_atom(A(1))))));
  for (const Val& r : regexes_up_to(5)) CHECK(nullable(r) == match_oracle(r, {}));
}

TEST_CASE("derivatives strip one letter") {
  CHECK(deriv(A(0), re_atom(A(0))) == re_eps());
  CHECK(deriv(A(1), re_atom(A(0))) == re_zero());
  // No simplification: the star derivative keeps its unit left factor.
  Val astar = re_star(re_atom(A(0)));
  CHECK(deriv(A(0), astar) == re_conc(re_eps(), astar));

  auto words = words_up_to(5);
  for (const Val& r : regexes_up_to(5))
    for (int c = 0; c < 2; ++c) {
      Val dr = deriv(A(c), r);
      for (const auto& w : words) {
        std::vector<Atom> aw{A(c)};
        aw.insert(aw.end(), w.begin(), w.end());
        CHECK(match_oracle(r, aw) == match_oracle(dr, w));
      }
    }
}

TEST_CASE("alternation canonical form") {
  Val a = re_atom(A(0)), b = re_atom(A(1)), z = re_zero();
  CHECK(aci_canonical(re_alt(re_alt(a, b), z)) == aci_canonical(re_alt(a, re_alt(b, z))));
  CHECK(aci_canonical(re_alt(a, a)) == a);
  CHECK(aci_canonical(a) == a);
  // Flattening reaches under other constructors.
  CHECK(aci_canonical(re_star(re_alt(b, re_alt(a, b)))) == re_star(re_alt(a, b)));

  auto words = words_up_to(5);
  for (const Val& r : regexes_up_to(4)) {
    Val c = aci_canonical(r);
    CHECK(aci_canonical(c) == c);
    for (const auto& w : words) CHECK(match_oracle(r, w) == match_oracle(c, w));
  }
}

TEST_CASE("canonical equality coincides with bounded rewrite joinability") {
  auto rs = regexes_up_to(4);
  std::vector<std::set<Val>> closures;
  closures.reserve(rs.size());
  for (const Val& r : rs) closures.push_back(bounded_closure(r, aci_step, 6, 3));
  long related = 0;
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = i + 1; j < rs.size(); ++j) {
      bool canon = aci_canonical(rs[i]) == aci_canonical(rs[j]);
      bool join = closures_intersect(closures[i], closures[j]);
      CHECK(canon == join);
      if (canon) ++related;
    }
  CHECK(related > 0);  // the sweep must actually exercise nontrivial classes
}

TEST_CASE("zero elimination and right distribution") {
  Val a = re_atom(A(0)), b = re_atom(A(1)), z = re_zero();
  CHECK(elim_zeros(re_alt(z, a)) == a);
  CHECK(elim_zeros(re_alt(a, z)) == a);
  CHECK(elim_zeros(re_alt(z, z)) == z);
  CHECK(elim_zeros(re_conc(z, a)) == z);
  // Only the left factor of a concatenation is inspected.
  CHECK(elim_zeros(re_conc(a, z)) == re_conc(a, z));
  CHECK(elim_zeros(a) == a);
  // Idempotent, and the language never changes.
  auto words = words_up_to(4);
  for (const Val& r : regexes_up_to(4)) {
    Val c = elim_zeros(r);
    CHECK(elim_zeros(c) == c);
    for (const auto& w : words) CHECK(match_oracle(r, w) == match_oracle(c, w));
  }

  Val t = re_star(b);
  CHECK(distribute(t, re_alt(a, b)) == re_alt(re_conc(a, t), re_conc(b, t)));
  CHECK(distribute(t, a) == re_conc(a, t));
  CHECK(distribute(t, re_conc(a, b)) == re_conc(re_conc(a, t), b));
}

TEST_CASE("restricted rewrite steps") {
  Val a = re_atom(A(0)), b = re_atom(A(1)), z = re_zero();

  auto contains = [](const std::vector<Val>& vs, const Val& v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
  };

  // Distribution surfaces as a single step on a concatenation.
  Val lhs = re_conc(re_alt(a, b), re_star(a));
  CHECK(contains(acidz_step(lhs),
                 re_alt(re_conc(a, re_star(a)), re_conc(b, re_star(a)))));
  // Duplication and reflexivity are always present.
  CHECK(contains(acidz_step(a), re_alt(a, a)));
  CHECK(contains(acidz_step(a), a));
  // Zero elimination composes with every step.
  CHECK(contains(acidz_step(re_conc(z, a)), z));
  CHECK(contains(acidz_step(re_alt(z, a)), a));
  // Nothing rewrites under Star: only reflexivity and top-level duplication.
  Val star = re_star(re_alt(a, b));
  std::vector<Val> succ = acidz_step(star);
  CHECK(contains(succ, star));
  CHECK(contains(succ, re_alt(star, star)));
  CHECK_FALSE(contains(succ, re_star(re_alt(b, a))));
  CHECK(succ.size() == 2);

  // Atom sets only shrink along the restricted rewrite.
  FunctorSpec f = regex_functor();
  for (const Val& r : regexes_up_to(4)) {
    AtomSet before = set_at(f, 0, r);
    for (const Val& s : acidz_step(r)) {
      AtomSet after = set_at(f, 0, s);
      CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    }
  }
}

TEST_CASE("derivative automata at hand-checked sizes") {
  Val a = re_atom(A(0)), b = re_atom(A(1));

  // Atom a: the states are the expression, Eps, and Zero.
  Dfa d1 = build_dfa(a, ab(), 64);
  CHECK(d1.states.size() == 3);
  CHECK(dfa_accepts(d1, {A(0)}));
  CHECK_FALSE(dfa_accepts(d1, {A(1)}));
  CHECK_FALSE(dfa_accepts(d1, {}));
  CHECK_FALSE(dfa_accepts(d1, {A(0), A(0)}));

  // (a|b)*: the unsimplified derivative keeps a unit left factor, so the
  // exploration finds the start, the derivative, and that derivative's own
  // fixed point -- three states, all accepting, matching the full language.
  Dfa d2 = build_dfa(re_star(re_alt(a, b)), ab(), 64);
  CHECK(d2.states.size() == 3);
  for (bool acc : d2.accepting) CHECK(acc);
  for (const auto& w : words_up_to(7)) CHECK(dfa_accepts(d2, w));

  // Zero: one rejecting sink.
  Dfa d3 = build_dfa(re_zero(), ab(), 64);
  CHECK(d3.states.size() == 1);
  CHECK_FALSE(d3.accepting[0]);

  // The state cap aborts loudly instead of looping.
  CHECK_THROWS_AS(build_dfa(a, ab(), 2), resource_limit_error);
}

TEST_CASE("automata agree with the matcher on the sample set") {
  std::vector<Val> samples = regexes_up_to(4);
  for (const auto& [name, syntax] : named_patterns()) {
    CAPTURE(name);
    samples.push_back(parse_regex(syntax, ab()));
  }
  auto words = words_up_to(7);
  for (const Val& r : samples) {
    Dfa d = build_dfa(r, ab(), 64);  // throws if the state cap is hit
    for (const auto& w : words) CHECK(dfa_accepts(d, w) == match_oracle(r, w));
  }
}

TEST_CASE("dot rendering is well formed and deterministic") {
  Val a = re_atom(A(0)), b = re_atom(A(1));
  Dfa d = build_dfa(re_conc(a, re_star(b)), ab(), 64);
  std::string dot = to_dot(d);
  DotShape shape = check_dot(dot);
  CHECK(shape.well_formed);
  CHECK(shape.node_lines == static_cast<long>(d.states.size()));
  // One start edge plus one edge per state and letter.
  CHECK(shape.edge_lines == static_cast<long>(1 + d.states.size() * 2));
  CHECK(to_dot(build_dfa(re_conc(a, re_star(b)), ab(), 64)) == dot);

  Dfa sink = build_dfa(re_zero(), ab(), 64);
  DotShape s1 = check_dot(to_dot(sink));
  CHECK(s1.well_formed);
  CHECK(s1.node_lines == 1);
  CHECK(s1.edge_lines == 3);  // start arrow plus two self-loops
}

TEST_CASE("concrete syntax round trip") {
  Universe u = ab();
  CHECK(parse_regex("0", u) == re_zero());
  CHECK(parse_regex("e", u) == re_eps());
  Val a = re_atom(A(0)), b = re_atom(A(1));
  CHECK(parse_regex("ab|b*", u) == re_alt(re_conc(a, b), re_star(b)));
  CHECK(parse_regex("(a|b)*abb", u) ==
        re_conc(re_conc(re_conc(re_star(re_alt(a, b)), a), b), b));
  CHECK(parse_regex("a**", u) == re_star(re_star(a)));

  CHECK_THROWS_AS(parse_regex("", u), std::invalid_argument);
  CHECK_THROWS_AS(parse_regex("(", u), std::invalid_argument);
  CHECK_THROWS_AS(parse_regex("a)", u), std::invalid_argument);
  CHECK_THROWS_AS(parse_regex("|a", u), std::invalid_argument);
  CHECK_THROWS_AS(parse_regex("c", u), std::invalid_argument);
  CHECK_THROWS_AS(parse_regex("a*(", u), std::invalid_argument);

  for (const Val& r : regexes_up_to(4)) CHECK(parse_regex(render(r), u) == r);
  CHECK(named_patterns().size() == 10);
}
