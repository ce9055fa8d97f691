#include "qbnf/regex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace qbnf {
namespace {

bool is_re(const Val& r, Ct c) { return !r.is_leaf && r.ct == c; }

const Atom& atom_of(const Val& r) { return r.kids[0].atom; }

// Flatten an Alt-spine into its non-Alt leaves.
void alt_leaves(const Val& r, std::vector<Val>& out) {
  if (is_re(r, Ct::ralt)) {
    alt_leaves(r.kids[0], out);
    alt_leaves(r.kids[1], out);
  } else {
    out.push_back(r);
  }
}

}  // namespace

bool nullable(const Val& r) {
  switch (r.ct) {
    case Ct::rzero:
    case Ct::ratom:
      return false;
    case Ct::reps:
    case Ct::rstar:
      return true;
    case Ct::ralt:
      return nullable(r.kids[0]) || nullable(r.kids[1]);
    case Ct::rconc:
      return nullable(r.kids[0]) && nullable(r.kids[1]);
    default:
      throw malformed_value_error("not a regex: " + r.str());
  }
}

Val deriv(const Atom& a, const Val& r) {
  switch (r.ct) {
    case Ct::rzero:
    case Ct::reps:
      return re_zero();
    case Ct::ratom:
      return atom_of(r) == a ? re_eps() : re_zero();
    case Ct::ralt:
      return re_alt(deriv(a, r.kids[0]), deriv(a, r.kids[1]));
    case Ct::rconc: {
      Val left = re_conc(deriv(a, r.kids[0]), r.kids[1]);
      if (nullable(r.kids[0])) return re_alt(left, deriv(a, r.kids[1]));
      return left;
    }
    case Ct::rstar:
      return re_conc(deriv(a, r.kids[0]), r);
    default:
      throw malformed_value_error("not a regex: " + r.str());
  }
}

bool match_oracle(const Val& r, const std::vector<Atom>& w) {
  switch (r.ct) {
    case Ct::rzero:
      return false;
    case Ct::reps:
      return w.empty();
    case Ct::ratom:
      return w.size() == 1 && w[0] == atom_of(r);
    case Ct::ralt:
      return match_oracle(r.kids[0], w) || match_oracle(r.kids[1], w);
    case Ct::rconc:
      for (size_t i = 0; i <= w.size(); ++i) {
        std::vector<Atom> u(w.begin(), w.begin() + i), v(w.begin() + i, w.end());
        if (match_oracle(r.kids[0], u) && match_oracle(r.kids[1], v)) return true;
      }
      return false;
    case Ct::rstar:
      if (w.empty()) return true;
      // Peel a nonempty prefix so the recursion shrinks.
      for (size_t i = 1; i <= w.size(); ++i) {
        std::vector<Atom> u(w.begin(), w.begin() + i), v(w.begin() + i, w.end());
        if (match_oracle(r.kids[0], u) && match_oracle(r, v)) return true;
      }
      return false;
    default:
      throw malformed_value_error("not a regex: " + r.str());
  }
}

Val aci_canonical(const Val& r) {
  if (r.is_leaf) return r;
  switch (r.ct) {
    case Ct::rzero:
    case Ct::reps:
    case Ct::ratom:
      return r;
    case Ct::rstar:
      return re_star(aci_canonical(r.kids[0]));
    case Ct::rconc:
      return re_conc(aci_canonical(r.kids[0]), aci_canonical(r.kids[1]));
    case Ct::ralt: {
      std::vector<Val> leaves;
      alt_leaves(re_alt(aci_canonical(r.kids[0]), aci_canonical(r.kids[1])), leaves);
      std::set<Val> uniq(leaves.begin(), leaves.end());
      std::vector<Val> sorted(uniq.begin(), uniq.end());
      Val acc = sorted.back();
      for (auto it = sorted.rbegin() + 1; it != sorted.rend(); ++it) acc = re_alt(*it, acc);
      return acc;
    }
    default:
      throw malformed_value_error("not a regex: " + r.str());
  }
}

Val elim_zeros(const Val& r) {
  if (is_re(r, Ct::ralt)) {
    Val a = elim_zeros(r.kids[0]);
    Val b = elim_zeros(r.kids[1]);
    if (a == re_zero()) return b;
    if (b == re_zero()) return a;
    return re_alt(a, b);
  }
  if (is_re(r, Ct::rconc)) {
    Val a = elim_zeros(r.kids[0]);
    if (a == re_zero()) return re_zero();
    return re_conc(a, r.kids[1]);
  }
  return r;
}

Val distribute(const Val& t, const Val& r) {
  if (is_re(r, Ct::ralt)) return re_alt(distribute(t, r.kids[0]), distribute(t, r.kids[1]));
  if (is_re(r, Ct::rconc)) return re_conc(distribute(t, r.kids[0]), r.kids[1]);
  return re_conc(r, t);
}

std::vector<Val> aci_step(const Val& r) {
  std::set<Val> out;
  out.insert(r);
  out.insert(re_alt(r, r));
  if (is_re(r, Ct::ralt)) {
    const Val& a = r.kids[0];
    const Val& b = r.kids[1];
    out.insert(re_alt(b, a));
    if (is_re(a, Ct::ralt)) out.insert(re_alt(a.kids[0], re_alt(a.kids[1], b)));
    if (is_re(b, Ct::ralt)) out.insert(re_alt(re_alt(a, b.kids[0]), b.kids[1]));
    for (const Val& a2 : aci_step(a))
      for (const Val& b2 : aci_step(b)) out.insert(re_alt(a2, b2));
  } else if (is_re(r, Ct::rconc)) {
    for (const Val& a2 : aci_step(r.kids[0]))
      for (const Val& b2 : aci_step(r.kids[1])) out.insert(re_conc(a2, b2));
  } else if (is_re(r, Ct::rstar)) {
    for (const Val& a2 : aci_step(r.kids[0])) out.insert(re_star(a2));
  }
  return std::vector<Val>(out.begin(), out.end());
}

std::vector<Val> acidz_step(const Val& r) {
  std::set<Val> out;
  out.insert(r);
  out.insert(re_alt(r, r));
  if (is_re(r, Ct::ralt)) {
    const Val& a = r.kids[0];
    const Val& b = r.kids[1];
    out.insert(re_alt(b, a));
    if (is_re(a, Ct::ralt)) out.insert(re_alt(a.kids[0], re_alt(a.kids[1], b)));
    if (is_re(b, Ct::ralt)) out.insert(re_alt(re_alt(a, b.kids[0]), b.kids[1]));
    for (const Val& a2 : acidz_step(a))
      for (const Val& b2 : acidz_step(b)) out.insert(re_alt(a2, b2));
  } else if (is_re(r, Ct::rconc)) {
    out.insert(distribute(r.kids[1], r.kids[0]));
    for (const Val& a2 : acidz_step(r.kids[0])) out.insert(re_conc(a2, r.kids[1]));
  }
  // No rewriting under Star.  Every derivable step also yields its
  // Zero-eliminated form.
  std::set<Val> closed = out;
  for (const Val& s : out) closed.insert(elim_zeros(s));
  return std::vector<Val>(closed.begin(), closed.end());
}

Dfa build_dfa(const Val& r, const Universe& alphabet, int state_limit) {
  Dfa d;
  d.alphabet = alphabet;
  std::map<Val, int> index;
  Val start = aci_canonical(r);
  d.states.push_back(start);
  index.emplace(start, 0);
  for (size_t s = 0; s < d.states.size(); ++s) {
    std::vector<int> row;
    row.reserve(alphabet.atoms.size());
    // d.states may grow below; copy the source state first.
    Val src = d.states[s];
    for (const Atom& a : alphabet.atoms) {
      Val t = aci_canonical(deriv(a, src));
      auto it = index.find(t);
      if (it == index.end()) {
        if (static_cast<int>(d.states.size()) >= state_limit)
          throw resource_limit_error("automaton exceeds the state limit of " +
                                     std::to_string(state_limit));
        d.states.push_back(t);
        it = index.emplace(t, static_cast<int>(d.states.size()) - 1).first;
      }
      row.push_back(it->second);
    }
    d.next.push_back(std::move(row));
  }
  d.accepting.reserve(d.states.size());
  for (const Val& s : d.states) d.accepting.push_back(nullable(s));
  return d;
}

std::string to_dot(const Dfa& d) {
  // Names follow the term order of the state forms, not discovery order.
  std::vector<int> order(d.states.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d.states[a] < d.states[b]; });
  std::vector<int> rank(d.states.size());
  for (size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);

  auto esc = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  std::string t = "digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n";
  for (size_t k = 0; k < order.size(); ++k) {
    int i = order[k];
    t += "  s" + std::to_string(k) + " [shape=" +
         (d.accepting[i] ? "doublecircle" : "circle") + ", label=\"" + esc(d.states[i].str()) +
         "\"];\n";
  }
  t += "  start -> s" + std::to_string(rank[0]) + ";\n";
  for (size_t i = 0; i < d.states.size(); ++i)
    for (size_t a = 0; a < d.alphabet.atoms.size(); ++a)
      t += "  s" + std::to_string(rank[i]) + " -> s" + std::to_string(rank[d.next[i][a]]) +
           " [label=\"" + d.alphabet.atoms[a].str(0) + "\"];\n";
  t += "}\n";
  return t;
}

namespace {

struct Parser {
  const std::string& s;
  const Universe& alphabet;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  bool at_primary() {
    skip();
    if (pos >= s.size()) return false;
    char c = s[pos];
    return c == '(' || c == '0' || c == 'e' || (c >= 'a' && c <= 'z');
  }

  Val alt() {
    Val r = concat();
    while (peek('|')) {
      ++pos;
      r = re_alt(r, concat());
    }
    return r;
  }
  Val concat() {
    Val r = starred();
    while (at_primary()) r = re_conc(r, starred());
    return r;
  }
  Val starred() {
    Val r = primary();
    while (peek('*')) {
      ++pos;
      r = re_star(r);
    }
    return r;
  }
  Val primary() {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("regex ended unexpectedly");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Val r = alt();
      if (!peek(')')) throw std::invalid_argument("missing ')' in regex");
      ++pos;
      return r;
    }
    ++pos;
    if (c == '0') return re_zero();
    if (c == 'e') return re_eps();
    if (c >= 'a' && c <= 'z') {
      int k = c - 'a';
      if (k >= alphabet.size())
        throw std::invalid_argument(std::string("letter '") + c + "' is outside the alphabet");
      return re_atom(alphabet.atoms[k]);
    }
    throw std::invalid_argument(std::string("unexpected character '") + c + "' in regex");
  }
};

}  // namespace

Val parse_regex(const std::string& text, const Universe& alphabet) {
  Parser p{text, alphabet};
  p.skip();
  if (p.pos >= text.size()) throw std::invalid_argument("empty regex");
  Val r = p.alt();
  p.skip();
  if (p.pos != text.size())
    throw std::invalid_argument("trailing input after regex: '" + text.substr(p.pos) + "'");
  return r;
}

std::vector<std::pair<std::string, std::string>> named_patterns() {
  return {
      {"any_star", "(a|b)*"},
      {"ends_a", "(a|b)*a"},
      {"ends_abb", "(a|b)*abb"},
      {"a_then_b", "a*b*"},
      {"ab_loop", "(ab)*"},
      {"doubles", "(aa|bb)*"},
      {"cube", "(a|b)(a|b)(a|b)"},
      {"a_bab", "a(ba)*b"},
      {"chunks", "(a*b)*"},
      {"even_len", "((a|b)(a|b))*"},
  };
}

}  // namespace qbnf
