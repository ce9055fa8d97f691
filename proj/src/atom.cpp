#include "qbnf/atom.hpp"

#include <algorithm>
#include <sstream>

namespace qbnf {

Atom Atom::tok(std::int32_t k) {
  if (k < 0) throw malformed_value_error("atom token must be non-negative");
  Atom a;
  a.code_ = {k};
  return a;
}

Atom Atom::star() {
  Atom a;
  a.code_ = {kStar};
  return a;
}

Atom Atom::emb(const Atom& x) {
  Atom a;
  a.code_ = x.code_;
  a.code_.push_back(kEmb);
  return a;
}

Atom Atom::pair(const Atom& x, const Atom& y) {
  Atom a;
  a.code_ = x.code_;
  a.code_.insert(a.code_.end(), y.code_.begin(), y.code_.end());
  a.code_.push_back(kPair);
  return a;
}

std::int32_t Atom::tok_value() const {
  if (!is_tok()) throw malformed_value_error("atom is not a plain token");
  return code_.back();
}

std::size_t Atom::operand_len(const std::vector<std::int32_t>& c, std::size_t end) {
  std::int32_t k = c[end - 1];
  if (k >= kStar) return 1;  // token or star
  if (k == kEmb) return 1 + operand_len(c, end - 1);
  // pair: second operand ends right before the marker, first one before that
  std::size_t lb = operand_len(c, end - 1);
  std::size_t la = operand_len(c, end - 1 - lb);
  return 1 + la + lb;
}

Atom Atom::emb_arg() const {
  if (!is_emb()) throw malformed_value_error("atom is not an embedded atom");
  Atom a;
  a.code_.assign(code_.begin(), code_.end() - 1);
  return a;
}

Atom Atom::pair_fst() const {
  if (!is_pair()) throw malformed_value_error("atom is not a pair");
  std::size_t lb = operand_len(code_, code_.size() - 1);
  Atom a;
  a.code_.assign(code_.begin(), code_.end() - 1 - lb);
  return a;
}

Atom Atom::pair_snd() const {
  if (!is_pair()) throw malformed_value_error("atom is not a pair");
  std::size_t lb = operand_len(code_, code_.size() - 1);
  Atom a;
  a.code_.assign(code_.end() - 1 - lb, code_.end() - 1);
  return a;
}

std::size_t Atom::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::int32_t v : code_) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

std::string Atom::str(int sort) const {
  if (is_tok()) {
    static const char* banks[] = {"abcdefgh", "pqrstuvw", "xyz"};
    std::int32_t k = tok_value();
    if (sort >= 0 && sort < 3 && k < static_cast<int>(std::string(banks[sort]).size()))
      return std::string(1, banks[sort][k]);
    std::ostringstream os;
    os << "t" << k;
    if (sort >= 0) os << "s" << sort;
    return os.str();
  }
  if (is_star()) return "@";
  if (is_emb()) return "^" + emb_arg().str(sort);
  return "(" + pair_fst().str(sort) + "," + pair_snd().str(sort) + ")";
}

Universe::Universe(std::vector<Atom> as) : atoms(std::move(as)) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

Universe Universe::tokens(int n) {
  std::vector<Atom> as;
  for (int i = 0; i < n; ++i) as.push_back(Atom::tok(i));
  return Universe(std::move(as));
}

bool Universe::contains(const Atom& a) const {
  return std::binary_search(atoms.begin(), atoms.end(), a);
}

std::string Universe::str(int sort) const {
  std::string s = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ",";
    s += atoms[i].str(sort);
  }
  return s + "}";
}

Universes token_universes(int arity, int n) {
  return Universes(static_cast<std::size_t>(arity), Universe::tokens(n));
}

Universe opt_universe(const Universe& u) {
  std::vector<Atom> as;
  as.push_back(Atom::star());
  for (const Atom& a : u.atoms) as.push_back(Atom::emb(a));
  return Universe(std::move(as));
}

Universes opt_universes(const Universes& us) {
  Universes r;
  r.reserve(us.size());
  for (const Universe& u : us) r.push_back(opt_universe(u));
  return r;
}

Atom AtomFn::operator()(const Atom& a) const {
  auto it = tbl.find(a);
  if (it == tbl.end())
    throw malformed_value_error("atom " + a.str() + " outside the function's source universe");
  return it->second;
}

std::string AtomFn::str() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [a, b] : tbl) {
    if (!first) s += ",";
    first = false;
    s += a.str() + "->" + b.str();
  }
  return s + "]";
}

AtomFn identity_fn(const Universe& u) {
  AtomFn f;
  for (const Atom& a : u.atoms) f.tbl[a] = a;
  return f;
}

AtomFn const_fn(const Universe& src, const Atom& target) {
  AtomFn f;
  for (const Atom& a : src.atoms) f.tbl[a] = target;
  return f;
}

AtomFn embed_fn(const Universe& u) {
  AtomFn f;
  for (const Atom& a : u.atoms) f.tbl[a] = Atom::emb(a);
  return f;
}

AtomFns embed_fns(const Universes& us) {
  AtomFns fs;
  fs.reserve(us.size());
  for (const Universe& u : us) fs.push_back(embed_fn(u));
  return fs;
}

AtomFn fst_fn(const Universe& pairs) {
  AtomFn f;
  for (const Atom& a : pairs.atoms) f.tbl[a] = a.pair_fst();
  return f;
}

AtomFn snd_fn(const Universe& pairs) {
  AtomFn f;
  for (const Atom& a : pairs.atoms) f.tbl[a] = a.pair_snd();
  return f;
}

std::vector<AtomFn> all_fns(const Universe& src, const Universe& dst, long limit) {
  if (src.size() == 0) return {AtomFn{}};
  double count = 1;
  for (int i = 0; i < src.size(); ++i) {
    count *= dst.size();
    if (count > static_cast<double>(limit))
      throw resource_limit_error("function enumeration over " + std::to_string(dst.size()) +
                                 "^" + std::to_string(src.size()) + " exceeds limit " +
                                 std::to_string(limit));
  }
  if (dst.size() == 0) return {};  // no function from a nonempty source into an empty target
  std::vector<AtomFn> out;
  std::vector<int> pick(static_cast<std::size_t>(src.size()), 0);
  for (;;) {
    AtomFn f;
    for (int i = 0; i < src.size(); ++i)
      f.tbl[src.atoms[static_cast<std::size_t>(i)]] =
          dst.atoms[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    out.push_back(std::move(f));
    int i = 0;
    while (i < src.size() && ++pick[static_cast<std::size_t>(i)] == dst.size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == src.size()) break;
  }
  return out;
}

std::string AtomRel::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [a, b] : pairs) {
    if (!first) s += ",";
    first = false;
    s += "(" + a.str() + "," + b.str() + ")";
  }
  return s + "}";
}

AtomRel identity_rel(const Universe& u) {
  AtomRel r;
  for (const Atom& a : u.atoms) r.pairs.insert({a, a});
  return r;
}

AtomRel full_rel(const Universe& src, const Universe& dst) {
  AtomRel r;
  for (const Atom& a : src.atoms)
    for (const Atom& b : dst.atoms) r.pairs.insert({a, b});
  return r;
}

AtomRel compose_rels(const AtomRel& r, const AtomRel& s) {
  AtomRel out;
  for (const auto& [a, b] : r.pairs)
    for (const auto& [b2, c] : s.pairs)
      if (b == b2) out.pairs.insert({a, c});
  return out;
}

AtomRels compose_rels(const AtomRels& rs, const AtomRels& ss) {
  AtomRels out;
  for (std::size_t i = 0; i < rs.size(); ++i) out.push_back(compose_rels(rs[i], ss[i]));
  return out;
}

AtomRel converse_rel(const AtomRel& r) {
  AtomRel out;
  for (const auto& [a, b] : r.pairs) out.pairs.insert({b, a});
  return out;
}

AtomRel opt_extend(const AtomRel& r) {
  AtomRel out;
  out.pairs.insert({Atom::star(), Atom::star()});
  for (const auto& [a, b] : r.pairs) out.pairs.insert({Atom::emb(a), Atom::emb(b)});
  return out;
}

AtomRels opt_extend(const AtomRels& rs) {
  AtomRels out;
  out.reserve(rs.size());
  for (const AtomRel& r : rs) out.push_back(opt_extend(r));
  return out;
}

Universe rel_universe(const AtomRel& r) {
  std::vector<Atom> as;
  for (const auto& [a, b] : r.pairs) as.push_back(Atom::pair(a, b));
  return Universe(std::move(as));
}

Universes rel_universes(const AtomRels& rs) {
  Universes out;
  out.reserve(rs.size());
  for (const AtomRel& r : rs) out.push_back(rel_universe(r));
  return out;
}

std::pair<std::vector<AtomRel>, bool> enumerate_rels(const Universe& src, const Universe& dst,
                                                     const CheckConfig& cfg, Rng& rng) {
  const int cells = src.size() * dst.size();
  std::vector<std::pair<Atom, Atom>> all;
  for (const Atom& a : src.atoms)
    for (const Atom& b : dst.atoms) all.push_back({a, b});
  if (cells <= cfg.rel_exhaustive_max) {
    std::vector<AtomRel> out;
    for (unsigned long mask = 0; mask < (1ul << cells); ++mask) {
      AtomRel r;
      for (int i = 0; i < cells; ++i)
        if (mask & (1ul << i)) r.pairs.insert(all[static_cast<std::size_t>(i)]);
      out.push_back(std::move(r));
    }
    return {out, true};
  }
  std::vector<AtomRel> out;
  out.push_back(AtomRel{});             // empty relation always present
  out.push_back(identity_rel(src));     // plus a couple of canonical shapes
  out.push_back(full_rel(src, dst));
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < cfg.rel_samples; ++k) {
    AtomRel r;
    for (const auto& ab : all)
      if (coin(rng)) r.pairs.insert(ab);
    out.push_back(std::move(r));
  }
  return {out, false};
}

std::vector<AtomFn> all_permutations(const Universe& u) {
  std::vector<Atom> perm = u.atoms;
  std::vector<AtomFn> out;
  std::sort(perm.begin(), perm.end());
  do {
    AtomFn f;
    for (std::size_t i = 0; i < perm.size(); ++i) f.tbl[u.atoms[i]] = perm[i];
    out.push_back(std::move(f));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace qbnf
