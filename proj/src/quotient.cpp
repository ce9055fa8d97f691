#include "qbnf/quotient.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qbnf/checks.hpp"

namespace qbnf {
namespace {

std::string us_key(const Universes& us) {
  std::string k;
  for (const auto& u : us) {
    k += u.str();
    k += '|';
  }
  return k;
}

// Shape of a term with the atoms blanked out; only equi-shaped values can be
// related by a structural relator, so the relator search joins on this.
Val skeleton(const Val& x) {
  if (x.is_leaf) return Val::leaf(x.sort, Atom::tok(0));
  std::vector<Val> ks;
  ks.reserve(x.kids.size());
  for (const auto& k : x.kids) ks.push_back(skeleton(k));
  return Val::node(x.ct, std::move(ks), x.aux);
}

}  // namespace

const ClassEnum& QuotientSpec::cls(const Val& x, const Universes& us,
                                   const CheckConfig& cfg) const {
  ClassKey key{us_key(us), x};
  auto it = cache->find(key);
  if (it == cache->end()) it = cache->emplace(key, class_enum(eq, raw, x, us, cfg)).first;
  return it->second;
}

Val QuotientSpec::abs(const Val& x, const Universes& us, const CheckConfig& cfg) const {
  if (eq.normalize) return eq.normalize(x);
  const ClassEnum& c = cls(x, us, cfg);
  const Val* best = &x;
  int best_size = fsize(raw, x);
  for (const auto& m : c.members) {
    int s = fsize(raw, m);
    if (s < best_size || (s == best_size && cmp(m, *best) < 0)) {
      best = &m;
      best_size = s;
    }
  }
  return *best;
}

Val QuotientSpec::map(const AtomFns& fns, const Val& x, const Universes& target_us,
                      const CheckConfig& cfg) const {
  return abs(fmap(raw, fns, x), target_us, cfg);
}

QSet QuotientSpec::set_at(int i, const Val& x, const Universes& us,
                          const CheckConfig& cfg) const {
  if (setter_respecting) return QSet{qbnf::set_at(raw, i, abs(x, us, cfg)), true};
  // The class-stable setter: an atom counts only if its embedded copy occurs
  // in every enumerated member of the class of the one-point-extended value.
  Val ex = fmap(raw, embed_fns(us), x);
  Universes ext = opt_universes(us);
  const ClassEnum& c = cls(ex, ext, cfg);
  QSet out;
  for (const auto& a : us[i].atoms) {
    Atom ea = Atom::emb(a);
    bool everywhere = true;
    for (const auto& m : c.members) {
      if (!qbnf::set_at(raw, i, m).count(ea)) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) out.atoms.insert(a);
  }
  // A truncated class can only shrink the intersection further, so a result
  // that is already empty is exact even without exhaustion.
  out.exact = c.exhausted || out.atoms.empty();
  return out;
}

std::vector<QSet> QuotientSpec::sets(const Val& x, const Universes& us,
                                     const CheckConfig& cfg) const {
  std::vector<QSet> out;
  out.reserve(raw.arity);
  for (int i = 0; i < raw.arity; ++i) out.push_back(set_at(i, x, us, cfg));
  return out;
}

Tri QuotientSpec::rel(const AtomRels& rs, const Val& x, const Val& y, const Universes& src_us,
                      const Universes& dst_us, const CheckConfig& cfg) const {
  Val ex = fmap(raw, embed_fns(src_us), x);
  Val ey = fmap(raw, embed_fns(dst_us), y);
  const ClassEnum& cx = cls(ex, opt_universes(src_us), cfg);
  const ClassEnum& cy = cls(ey, opt_universes(dst_us), cfg);
  AtomRels ors = opt_extend(rs);

  bool any_unknown = false;
  // Structural relators reject unequal shapes outright, so join the member
  // lists on their skeletons instead of scanning the full square.
  bool structural = raw.structural_map && !raw.rel_fast && !raw.witness_constrained;
  if (structural) {
    std::map<Val, std::vector<const Val*>> buckets;
    for (const auto& v : cy.members) buckets[skeleton(v)].push_back(&v);
    for (const auto& u : cx.members) {
      auto it = buckets.find(skeleton(u));
      if (it == buckets.end()) continue;
      for (const Val* v : it->second) {
        Tri t = rel_tri(raw, ors, u, *v, cfg);
        if (t == Tri::yes) return Tri::yes;
        if (t == Tri::unknown) any_unknown = true;
      }
    }
  } else {
    for (const auto& u : cx.members) {
      for (const auto& v : cy.members) {
        Tri t = rel_tri(raw, ors, u, v, cfg);
        if (t == Tri::yes) return Tri::yes;
        if (t == Tri::unknown) any_unknown = true;
      }
    }
  }
  if (cx.exhausted && cy.exhausted && !any_unknown) return Tri::no;
  if (eq.small_witnesses && !any_unknown) return Tri::no;
  return Tri::unknown;
}

AtomSet QuotientSpec::naive_set(int i, const Val& x, const Universes& us,
                                const CheckConfig& cfg) const {
  return qbnf::set_at(raw, i, abs(x, us, cfg));
}

Tri QuotientSpec::naive_rel(const AtomRels& rs, const Val& x, const Val& y,
                            const Universes& src_us, const Universes& dst_us,
                            const CheckConfig& cfg) const {
  const ClassEnum& cx = cls(x, src_us, cfg);
  const ClassEnum& cy = cls(y, dst_us, cfg);
  bool any_unknown = false;
  for (const auto& u : cx.members) {
    for (const auto& v : cy.members) {
      Tri t = rel_tri(raw, rs, u, v, cfg);
      if (t == Tri::yes) return Tri::yes;
      if (t == Tri::unknown) any_unknown = true;
    }
  }
  if (cx.exhausted && cy.exhausted && !any_unknown) return Tri::no;
  if (eq.small_witnesses && !any_unknown) return Tri::no;
  return Tri::unknown;
}

bool QuotientSpec::in_sets_sim(const std::vector<AtomSet>& as, const Val& x,
                               const Universes& us, const CheckConfig& cfg) const {
  return in_sets_by_map_with(raw, us, as, x, cfg,
                             [this](const Val& a, const Val& b) { return eq.decide(a, b); });
}

std::vector<Val> QuotientSpec::enumerate(const Universes& us, int bound,
                                         const CheckConfig& cfg) const {
  std::vector<Val> out;
  for (const auto& v : enumerate_vals(raw, us, bound)) {
    bool seen = false;
    for (const auto& r : out) {
      if (eq.decide(v, r)) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(abs(v, us, cfg));
  }
  return out;
}

std::variant<QuotientSpec, Refusal> q_make(const FunctorSpec& f, const EquivSpec& e,
                                           const Universes& us, const CheckConfig& cfg) {
  auto detail = [](const CheckResult& c) {
    std::string d = c.counterexample ? *c.counterexample : c.note;
    if (c.status == Status::resource) d = "bounds exhausted before a verdict: " + d;
    return d;
  };
  CheckResult eqv = check_equivp(f, e, us, cfg);
  if (eqv.status != Status::pass) return Refusal{"equivp", detail(eqv)};
  CheckResult mr = check_map_respect(f, e, us, cfg);
  if (mr.status != Status::pass) return Refusal{"map_respect", detail(mr)};
  CheckResult nat = check_equiv_naturality(f, e, us, cfg);
  if (nat.status != Status::pass) return Refusal{"equiv_naturality", detail(nat)};

  QuotientSpec q;
  q.name = f.name + "/" + e.name;
  q.raw = f;
  q.eq = e;
  CheckResult sr =
      check_set_respect(f, e, token_universes(f.arity, cfg.set_respect_universe), cfg);
  q.setter_respecting = sr.status == Status::pass;
  return q;
}

QuotientSpec q_make_ok(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                       const CheckConfig& cfg) {
  auto r = q_make(f, e, us, cfg);
  if (auto* rf = std::get_if<Refusal>(&r))
    throw std::runtime_error("quotient refused (" + rf->check + "): " + rf->detail);
  return std::get<QuotientSpec>(std::move(r));
}

}  // namespace qbnf
