#include "qbnf/functor.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qbnf {

namespace {

void check_sorts(const Val& x, int arity) {
  for_each_leaf(x, [&](const Val& l) {
    if (l.sort < 0 || l.sort >= arity)
      throw malformed_value_error("leaf sort " + std::to_string(l.sort) +
                                  " outside arity " + std::to_string(arity));
  });
}

}  // namespace

void validate(const FunctorSpec& f, const Val& x) {
  check_sorts(x, f.arity);
  if (f.shape_ok && !f.shape_ok(x))
    throw malformed_value_error("value " + x.str() + " does not fit container " + f.name);
}

Val fmap(const FunctorSpec& f, const AtomFns& fns, const Val& x) {
  validate(f, x);
  if (static_cast<int>(fns.size()) != f.arity)
    throw malformed_value_error("mapper for " + f.name + " needs " + std::to_string(f.arity) +
                                " functions, got " + std::to_string(fns.size()));
  if (f.map_impl) return f.map_impl(f, fns, x);
  return map_leaves(x, fns);
}

AtomSet set_at(const FunctorSpec& f, int i, const Val& x) {
  validate(f, x);
  if (i < 0 || i >= f.arity)
    throw malformed_value_error("setter index " + std::to_string(i) + " outside arity " +
                                std::to_string(f.arity));
  if (f.set_impl) return f.set_impl(f, i, x);
  return leaf_atoms(x, i);
}

std::vector<AtomSet> sets(const FunctorSpec& f, const Val& x) {
  std::vector<AtomSet> out;
  for (int i = 0; i < f.arity; ++i) out.push_back(set_at(f, i, x));
  return out;
}

int fsize(const FunctorSpec& f, const Val& x) {
  if (f.size_impl) return f.size_impl(x);
  return node_count(x);
}

bool in_sets(const FunctorSpec& f, const std::vector<AtomSet>& as, const Val& x) {
  for (int i = 0; i < f.arity; ++i) {
    AtomSet s = set_at(f, i, x);
    const AtomSet& a = as[static_cast<std::size_t>(i)];
    for (const Atom& e : s)
      if (!a.count(e)) return false;
  }
  return true;
}

bool in_sets_by_map_with(const FunctorSpec& f, const Universes& us,
                         const std::vector<AtomSet>& as, const Val& x, const CheckConfig& cfg,
                         const std::function<bool(const Val&, const Val&)>& same) {
  validate(f, x);
  // Per sort, all pairs of functions into the one-point extension that agree
  // on the given set.
  std::vector<std::vector<std::pair<AtomFn, AtomFn>>> agreeing(static_cast<std::size_t>(f.arity));
  double total = 1;
  for (int i = 0; i < f.arity; ++i) {
    const Universe& u = us[static_cast<std::size_t>(i)];
    Universe target = opt_universe(u);
    std::vector<AtomFn> fns = all_fns(u, target, cfg.fn_enum_limit);
    for (const AtomFn& fn : fns)
      for (const AtomFn& gn : fns) {
        bool agree = true;
        for (const Atom& a : as[static_cast<std::size_t>(i)]) {
          if (!fn.defined_on(a) || fn(a) != gn(a)) {
            agree = false;
            break;
          }
        }
        if (agree) agreeing[static_cast<std::size_t>(i)].push_back({fn, gn});
      }
    total *= static_cast<double>(agreeing[static_cast<std::size_t>(i)].size());
    if (total > static_cast<double>(cfg.fn_enum_limit))
      throw resource_limit_error("membership-by-mapping would try more than " +
                                 std::to_string(cfg.fn_enum_limit) + " function tuples");
  }
  // Walk the product of per-sort choices.
  std::vector<std::size_t> pick(static_cast<std::size_t>(f.arity), 0);
  for (;;) {
    AtomFns fs, gs;
    for (int i = 0; i < f.arity; ++i) {
      const auto& pr = agreeing[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
      fs.push_back(pr.first);
      gs.push_back(pr.second);
    }
    if (!same(fmap(f, fs, x), fmap(f, gs, x))) return false;
    int i = 0;
    while (i < f.arity &&
           ++pick[static_cast<std::size_t>(i)] == agreeing[static_cast<std::size_t>(i)].size()) {
      pick[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == f.arity) break;
  }
  return true;
}

bool in_sets_by_map(const FunctorSpec& f, const Universes& us, const std::vector<AtomSet>& as,
                    const Val& x, const CheckConfig& cfg) {
  return in_sets_by_map_with(f, us, as, x, cfg,
                             [](const Val& a, const Val& b) { return a == b; });
}

std::optional<Val> rel_witness(const FunctorSpec& f, const Val& x, const Val& y) {
  if (f.witness_impl) return f.witness_impl(f, x, y);
  Val out;
  if (!zip_vals(x, y, out)) return std::nullopt;
  return out;
}

std::vector<Val> enumerate_vals(const FunctorSpec& f, const Universes& us, int bound) {
  if (static_cast<int>(us.size()) != f.arity)
    throw malformed_value_error("enumeration for " + f.name + " needs " +
                                std::to_string(f.arity) + " universes");
  if (!f.enum_impl)
    throw malformed_value_error("container " + f.name + " has no enumerator");
  std::vector<Val> out = f.enum_impl(f, us, bound);
  std::sort(out.begin(), out.end(), [&](const Val& a, const Val& b) {
    int sa = fsize(f, a), sb = fsize(f, b);
    if (sa != sb) return sa < sb;
    return cmp(a, b) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Leaf-pairing decision: exact for structural mappers.
Tri rel_by_pairing(const AtomRels& rs, const Val& x, const Val& y) {
  Val z;
  if (!zip_vals(x, y, z)) return Tri::no;
  bool ok = true;
  for_each_leaf(z, [&](const Val& l) {
    if (!ok) return;
    if (!rs[static_cast<std::size_t>(l.sort)].contains(l.atom.pair_fst(), l.atom.pair_snd()))
      ok = false;
  });
  return ok ? Tri::yes : Tri::no;
}

}  // namespace

Tri rel_by_witness(const FunctorSpec& f, const AtomRels& rs, const Val& x, const Val& y,
                   int size_bound) {
  Universes pair_us = rel_universes(rs);
  AtomFns fsts, snds;
  for (const Universe& pu : pair_us) {
    fsts.push_back(fst_fn(pu));
    snds.push_back(snd_fn(pu));
  }
  for (const Val& z : enumerate_vals(f, pair_us, size_bound)) {
    if (fmap(f, fsts, z) == x && fmap(f, snds, z) == y) return Tri::yes;
  }
  // The search is complete for structural mappers (witness shape = value
  // shape, and a subtype restriction shrinks the pool, never the shapes);
  // otherwise the bound may simply have been too small.
  if (f.structural_map) return Tri::no;
  return Tri::unknown;
}

Tri rel_tri(const FunctorSpec& f, const AtomRels& rs, const Val& x, const Val& y,
            const CheckConfig& cfg) {
  validate(f, x);
  validate(f, y);
  if (static_cast<int>(rs.size()) != f.arity)
    throw malformed_value_error("relator for " + f.name + " needs " + std::to_string(f.arity) +
                                " relations");
  if (f.rel_fast) {
    if (std::optional<bool> r = f.rel_fast(f, rs, x, y)) return *r ? Tri::yes : Tri::no;
  }
  if (f.structural_map && !f.witness_constrained) return rel_by_pairing(rs, x, y);
  int bound = fsize(f, x);
  if (!f.structural_map) bound += fsize(f, y) + cfg.witness_slack;
  return rel_by_witness(f, rs, x, y, bound);
}

bool rel_holds(const FunctorSpec& f, const AtomRels& rs, const Val& x, const Val& y,
               const CheckConfig& cfg) {
  Tri t = rel_tri(f, rs, x, y, cfg);
  if (t == Tri::unknown)
    throw resource_limit_error("relator witness search for " + f.name +
                               " was inconclusive within its bound");
  return t == Tri::yes;
}

namespace {

// --- composition helpers ---------------------------------------------------

// Replace every slot node by a leaf of the slot's sort so the outer grammar
// check can run on the skeleton; collect the inner values on the way.
bool strip_slots(const Val& x, Val& skeleton, std::vector<std::pair<int, const Val*>>& slots) {
  if (x.is_leaf) return false;  // a composite value has no bare leaves of its own
  if (x.ct == Ct::slot) {
    if (x.kids.size() != 1) return false;
    skeleton = Val::leaf(x.aux, Atom::tok(0));
    slots.push_back({x.aux, &x.kids[0]});
    return true;
  }
  Val v;
  v.ct = x.ct;
  v.aux = x.aux;
  v.kids.resize(x.kids.size());
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!strip_slots(x.kids[i], v.kids[i], slots)) return false;
  skeleton = std::move(v);
  return true;
}

Val map_slots(const Val& x, const std::vector<FunctorSpec>& inners, const AtomFns& fns) {
  if (x.ct == Ct::slot) {
    Val v = x;
    v.kids[0] = fmap(inners[static_cast<std::size_t>(x.aux)], fns, x.kids[0]);
    return v;
  }
  Val v;
  v.ct = x.ct;
  v.aux = x.aux;
  v.kids.reserve(x.kids.size());
  for (const Val& k : x.kids) v.kids.push_back(map_slots(k, inners, fns));
  return v;
}

}  // namespace

FunctorSpec compose(const FunctorSpec& outer, const std::vector<FunctorSpec>& inners) {
  if (static_cast<int>(inners.size()) != outer.arity)
    throw malformed_value_error("composition of " + outer.name + " needs " +
                                std::to_string(outer.arity) + " inner containers");
  int inner_arity = inners[0].arity;
  for (const FunctorSpec& g : inners)
    if (g.arity != inner_arity)
      throw malformed_value_error("inner containers of a composition must share one arity");

  FunctorSpec c;
  c.name = outer.name + "(";
  for (std::size_t j = 0; j < inners.size(); ++j) {
    if (j) c.name += ",";
    c.name += inners[j].name;
  }
  c.name += ")";
  c.arity = inner_arity;
  c.structural_map = true;
  for (const FunctorSpec& g : inners) {
    if (!g.structural_map) c.structural_map = false;
    if (g.witness_constrained) c.witness_constrained = true;
  }

  FunctorSpec outer_copy = outer;
  std::vector<FunctorSpec> inner_copy = inners;

  c.shape_ok = [outer_copy, inner_copy](const Val& x) {
    Val skeleton;
    std::vector<std::pair<int, const Val*>> slot_vals;
    if (!strip_slots(x, skeleton, slot_vals)) return false;
    if (outer_copy.shape_ok && !outer_copy.shape_ok(skeleton)) return false;
    for (const auto& [j, v] : slot_vals) {
      if (j < 0 || j >= static_cast<int>(inner_copy.size())) return false;
      if (inner_copy[static_cast<std::size_t>(j)].shape_ok &&
          !inner_copy[static_cast<std::size_t>(j)].shape_ok(*v))
        return false;
    }
    return true;
  };

  if (!c.structural_map) {
    c.map_impl = [inner_copy](const FunctorSpec&, const AtomFns& fns, const Val& x) {
      return map_slots(x, inner_copy, fns);
    };
  }

  c.set_impl = [inner_copy](const FunctorSpec&, int i, const Val& x) {
    AtomSet out;
    std::function<void(const Val&)> walk = [&](const Val& v) {
      if (v.ct == Ct::slot) {
        AtomSet s = set_at(inner_copy[static_cast<std::size_t>(v.aux)], i, v.kids[0]);
        out.insert(s.begin(), s.end());
        return;
      }
      for (const Val& k : v.kids) walk(k);
    };
    walk(x);
    return out;
  };

  c.size_impl = [outer_copy, inner_copy](const Val& x) {
    Val skeleton;
    std::vector<std::pair<int, const Val*>> slot_vals;
    if (!strip_slots(x, skeleton, slot_vals))
      throw malformed_value_error("composite value has a bad shape");
    int n = fsize(outer_copy, skeleton);
    for (const auto& [j, v] : slot_vals) n += fsize(inner_copy[static_cast<std::size_t>(j)], *v);
    return n;
  };

  c.enum_impl = [outer_copy, inner_copy](const FunctorSpec& self, const Universes& us, int bound) {
    // Enumerate inner values once per outer sort, pretend they are atoms of a
    // synthetic universe, enumerate outer shapes over those, then substitute.
    std::vector<std::vector<Val>> inner_vals;
    Universes synth;
    for (const FunctorSpec& g : inner_copy) {
      inner_vals.push_back(enumerate_vals(g, us, bound));
      synth.push_back(Universe::tokens(static_cast<int>(inner_vals.back().size())));
    }
    std::vector<Val> out;
    std::function<Val(const Val&)> subst = [&](const Val& v) -> Val {
      if (v.is_leaf) {
        const Val& inner = inner_vals[static_cast<std::size_t>(v.sort)]
                                     [static_cast<std::size_t>(v.atom.tok_value())];
        return Val::node(Ct::slot, {inner}, v.sort);
      }
      Val w;
      w.ct = v.ct;
      w.aux = v.aux;
      w.kids.reserve(v.kids.size());
      for (const Val& k : v.kids) w.kids.push_back(subst(k));
      return w;
    };
    for (const Val& shape : enumerate_vals(outer_copy, synth, bound)) {
      Val composite = subst(shape);
      if (fsize(self, composite) <= bound) out.push_back(std::move(composite));
    }
    return out;
  };

  return c;
}

}  // namespace qbnf
