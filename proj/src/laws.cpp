#include "qbnf/laws.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbnf/bitmat.hpp"

namespace qbnf {
namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// One handle over the operations the laws quantify: a raw container uses its
// plain operations with term equality, a quotient uses the lifted operations
// with its decision procedure.
struct Ops {
  std::string name;
  int arity = 1;
  FunctorSpec rawf;  // the underlying container (for zip witnesses)
  std::function<std::vector<Val>(const Universes&, int)> enumerate;
  std::function<bool(const Val&, const Val&)> equal;
  std::function<Val(const AtomFns&, const Val&, const Universes&)> map;
  std::function<QSet(int, const Val&, const Universes&)> set_at;
  std::function<Tri(const AtomRels&, const Val&, const Val&, const Universes&, const Universes&)>
      rel;
  // Equivalence-class members of x with the exhaustion flag (a raw value's
  // class is itself).
  std::function<std::pair<std::vector<Val>, bool>(const Val&, const Universes&)> members;
};

Ops raw_ops(const FunctorSpec& f, const CheckConfig& cfg) {
  Ops o;
  o.name = f.name;
  o.arity = f.arity;
  o.rawf = f;
  o.enumerate = [f](const Universes& us, int bound) { return enumerate_vals(f, us, bound); };
  o.equal = [](const Val& a, const Val& b) { return a == b; };
  o.map = [f](const AtomFns& fns, const Val& x, const Universes&) { return fmap(f, fns, x); };
  o.set_at = [f](int i, const Val& x, const Universes&) { return QSet{set_at(f, i, x), true}; };
  o.rel = [f, cfg](const AtomRels& rs, const Val& x, const Val& y, const Universes&,
                   const Universes&) { return rel_tri(f, rs, x, y, cfg); };
  o.members = [](const Val& x, const Universes&) {
    return std::make_pair(std::vector<Val>{x}, true);
  };
  return o;
}

Ops quotient_ops(const QuotientSpec& q, const CheckConfig& cfg) {
  auto qp = std::make_shared<QuotientSpec>(q);
  Ops o;
  o.name = q.name;
  o.arity = q.raw.arity;
  o.rawf = q.raw;
  o.enumerate = [qp, cfg](const Universes& us, int bound) { return qp->enumerate(us, bound, cfg); };
  o.equal = [qp](const Val& a, const Val& b) { return qp->same(a, b); };
  o.map = [qp, cfg](const AtomFns& fns, const Val& x, const Universes& target) {
    return qp->map(fns, x, target, cfg);
  };
  o.set_at = [qp, cfg](int i, const Val& x, const Universes& us) {
    return qp->set_at(i, x, us, cfg);
  };
  o.rel = [qp, cfg](const AtomRels& rs, const Val& x, const Val& y, const Universes& su,
                    const Universes& du) { return qp->rel(rs, x, y, su, du, cfg); };
  o.members = [qp, cfg](const Val& x, const Universes& us) {
    const ClassEnum& c = qp->cls(x, us, cfg);
    return std::make_pair(c.members, c.exhausted);
  };
  return o;
}

// Cartesian product of per-sort function lists.
std::vector<AtomFns> fn_tuples(const std::vector<std::vector<AtomFn>>& per_sort) {
  std::vector<AtomFns> out{{}};
  for (const auto& fs : per_sort) {
    std::vector<AtomFns> next;
    next.reserve(out.size() * fs.size());
    for (const auto& t : out)
      for (const auto& f : fs) {
        AtomFns t2 = t;
        t2.push_back(f);
        next.push_back(std::move(t2));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<AtomFns> endo_fn_tuples(const Universes& us, const CheckConfig& cfg) {
  std::vector<std::vector<AtomFn>> per_sort;
  per_sort.reserve(us.size());
  for (const auto& u : us) per_sort.push_back(all_fns(u, u, cfg.fn_enum_limit));
  return fn_tuples(per_sort);
}

// g after f, as one table.
AtomFn compose_fn(const AtomFn& f, const AtomFn& g) {
  AtomFn h;
  for (const auto& [a, b] : f.tbl) h.tbl[a] = g(b);
  return h;
}

std::string fns_str(const AtomFns& fns) {
  std::string s;
  for (size_t i = 0; i < fns.size(); ++i) {
    if (i) s += "; ";
    s += fns[i].str();
  }
  return s;
}

std::string rels_str(const AtomRels& rs) {
  std::string s;
  for (size_t i = 0; i < rs.size(); ++i) {
    if (i) s += "; ";
    s += rs[i].str();
  }
  return s;
}

std::string set_str(const AtomSet& as, int sort) {
  std::string s = "{";
  bool first = true;
  for (const auto& a : as) {
    if (!first) s += ",";
    s += a.str(sort);
    first = false;
  }
  return s + "}";
}

CheckResult law_map_id(const Ops& ops, const std::vector<Val>& vals, const Universes& us,
                       const CheckConfig&) {
  Timer t;
  CheckResult r;
  r.law = "map_id";
  AtomFns idt;
  for (const auto& u : us) idt.push_back(identity_fn(u));
  for (const auto& x : vals) {
    ++r.cases;
    Val y = ops.map(idt, x, us);
    if (!ops.equal(y, x)) {
      r.status = Status::fail;
      r.counterexample = "x=" + x.str() + ", map id x=" + y.str();
      break;
    }
  }
  r.millis = t.ms();
  return r;
}

CheckResult law_map_comp(const Ops& ops, const std::vector<Val>& vals, const Universes& us,
                         const std::vector<AtomFns>& tuples, const CheckConfig&) {
  Timer t;
  CheckResult r;
  r.law = "map_comp";
  for (const auto& fa : tuples) {
    for (const auto& fb : tuples) {
      AtomFns comp;
      for (size_t i = 0; i < fa.size(); ++i) comp.push_back(compose_fn(fa[i], fb[i]));
      for (const auto& x : vals) {
        ++r.cases;
        Val lhs = ops.map(comp, x, us);
        Val rhs = ops.map(fb, ops.map(fa, x, us), us);
        if (!ops.equal(lhs, rhs)) {
          r.status = Status::fail;
          r.counterexample = "x=" + x.str() + ", f=[" + fns_str(fa) + "], g=[" + fns_str(fb) +
                             "], map (g.f) x=" + lhs.str() + ", map g (map f x)=" + rhs.str();
          r.millis = t.ms();
          return r;
        }
      }
    }
  }
  r.millis = t.ms();
  return r;
}

CheckResult law_set_map(const Ops& ops, const std::vector<Val>& vals, const Universes& us,
                        const std::vector<AtomFns>& tuples, const CheckConfig&) {
  Timer t;
  CheckResult r;
  r.law = "set_map";
  long inconclusive = 0;
  for (const auto& fs : tuples) {
    for (const auto& x : vals) {
      Val y = ops.map(fs, x, us);
      for (int i = 0; i < ops.arity; ++i) {
        ++r.cases;
        QSet lhs = ops.set_at(i, y, us);
        QSet base = ops.set_at(i, x, us);
        AtomSet rhs;
        for (const auto& a : base.atoms) rhs.insert(fs[i](a));
        if (lhs.atoms != rhs) {
          if (lhs.exact && base.exact) {
            r.status = Status::fail;
            r.counterexample = "x=" + x.str() + ", f=[" + fns_str(fs) + "], sort " +
                               std::to_string(i) + ": set(map f x)=" + set_str(lhs.atoms, i) +
                               ", f<set x>=" + set_str(rhs, i);
            r.millis = t.ms();
            return r;
          }
          ++inconclusive;
        }
      }
    }
  }
  if (inconclusive > 0) {
    r.status = Status::resource;
    r.note = std::to_string(inconclusive) + " comparisons had only bounded setter values";
  }
  r.millis = t.ms();
  return r;
}

CheckResult law_map_cong(const Ops& ops, const std::vector<Val>& vals, const Universes& us,
                         const std::vector<AtomFns>& tuples, const CheckConfig&) {
  Timer t;
  CheckResult r;
  r.law = "map_cong";
  for (const auto& x : vals) {
    std::vector<std::vector<Atom>> content(ops.arity);
    for (int i = 0; i < ops.arity; ++i) {
      QSet s = ops.set_at(i, x, us);
      content[i].assign(s.atoms.begin(), s.atoms.end());
    }
    // Group the function tuples by their restriction to x's content; within a
    // group all mapped images must coincide.
    std::map<std::vector<Atom>, std::pair<Val, const AtomFns*>> groups;
    for (const auto& fs : tuples) {
      std::vector<Atom> sig;
      for (int i = 0; i < ops.arity; ++i)
        for (const auto& a : content[i]) sig.push_back(fs[i](a));
      ++r.cases;
      Val m = ops.map(fs, x, us);
      auto it = groups.find(sig);
      if (it == groups.end()) {
        groups.emplace(std::move(sig), std::make_pair(std::move(m), &fs));
      } else if (!ops.equal(m, it->second.first)) {
        r.status = Status::fail;
        r.counterexample = "x=" + x.str() + ", f=[" + fns_str(*it->second.second) + "], g=[" +
                           fns_str(fs) + "] agree on the content but map f x=" +
                           it->second.first.str() + ", map g x=" + m.str();
        r.millis = t.ms();
        return r;
      }
    }
  }
  r.millis = t.ms();
  return r;
}

CheckResult law_set_finite(const Ops& ops, const std::vector<Val>& vals, const Universes& us,
                           const CheckConfig&) {
  Timer t;
  CheckResult r;
  r.law = "set_finite";
  r.substituted_axiom = true;
  r.note = "stands in for the cardinality-bound axioms: every setter value is a finite set";
  for (const auto& x : vals) {
    for (int i = 0; i < ops.arity; ++i) {
      ++r.cases;
      ops.set_at(i, x, us);  // computable and finite by construction
    }
  }
  r.millis = t.ms();
  return r;
}

// Everything laws in_rel and rel_comp share: the enumerated values, the
// relation tuples, and one yes/unknown matrix pair per tuple.
struct RelCtx {
  std::vector<Val> vals;
  std::vector<AtomRels> tuples;
  bool exhaustive = true;
  std::vector<BitMat> yes;
  std::vector<BitMat> unk;
  std::map<std::string, int> index;  // rels_str -> tuple position
};

RelCtx build_rel_ctx(const Ops& ops, const std::vector<Val>& vals, const Universes& us,
                     const CheckConfig& cfg) {
  RelCtx ctx;
  ctx.vals = vals;
  Rng rng(cfg.seed);
  std::vector<std::vector<AtomRel>> per_sort;
  for (const auto& u : us) {
    auto [rels, exh] = enumerate_rels(u, u, cfg, rng);
    ctx.exhaustive = ctx.exhaustive && exh;
    per_sort.push_back(std::move(rels));
  }
  std::vector<AtomRels> acc{{}};
  for (const auto& rs : per_sort) {
    std::vector<AtomRels> next;
    for (const auto& t : acc)
      for (const auto& r : rs) {
        AtomRels t2 = t;
        t2.push_back(r);
        next.push_back(std::move(t2));
      }
    acc = std::move(next);
  }
  ctx.tuples = std::move(acc);
  int n = static_cast<int>(vals.size());
  for (size_t t = 0; t < ctx.tuples.size(); ++t) {
    BitMat y(n), u(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Tri v = ops.rel(ctx.tuples[t], vals[i], vals[j], us, us);
        if (v == Tri::yes)
          y.set(i, j);
        else if (v == Tri::unknown)
          u.set(i, j);
      }
    ctx.yes.push_back(std::move(y));
    ctx.unk.push_back(std::move(u));
    ctx.index.emplace(rels_str(ctx.tuples[t]), static_cast<int>(t));
  }
  return ctx;
}

CheckResult law_in_rel(const Ops& ops, RelCtx& ctx, const Universes& us, const CheckConfig& cfg) {
  Timer tm;
  CheckResult r;
  r.law = "in_rel";
  long unresolved = 0;

  // The witness pool: container values over the pair universes, with their
  // setters and both projections computed once.
  Universes pair_us;
  AtomFns fsts, snds;
  for (const auto& u : us) {
    Universe pu = rel_universe(full_rel(u, u));
    fsts.push_back(fst_fn(pu));
    snds.push_back(snd_fn(pu));
    pair_us.push_back(std::move(pu));
  }
  struct Wit {
    Val z;
    std::vector<QSet> sets;
    int px = -1, py = -1;  // indices into ctx.vals
  };
  auto val_index = [&](const Val& v) {
    for (size_t i = 0; i < ctx.vals.size(); ++i)
      if (ops.equal(v, ctx.vals[i])) return static_cast<int>(i);
    return -1;
  };
  std::vector<Wit> wits;
  for (const auto& z : ops.enumerate(pair_us, cfg.size)) {
    Wit w;
    w.z = z;
    for (int i = 0; i < ops.arity; ++i) w.sets.push_back(ops.set_at(i, z, pair_us));
    w.px = val_index(ops.map(fsts, z, us));
    w.py = val_index(ops.map(snds, z, us));
    if (w.px >= 0 && w.py >= 0) wits.push_back(std::move(w));
  }

  for (size_t t = 0; t < ctx.tuples.size(); ++t) {
    const AtomRels& rs = ctx.tuples[t];
    std::vector<AtomSet> rp(ops.arity);
    for (int i = 0; i < ops.arity; ++i)
      for (const auto& [a, b] : rs[i].pairs) rp[i].insert(Atom::pair(a, b));
    std::vector<const Wit*> sub;
    for (const auto& w : wits) {
      bool inside = true;
      for (int i = 0; i < ops.arity && inside; ++i)
        for (const auto& a : w.sets[i].atoms)
          if (!rp[i].count(a)) {
            inside = false;
            break;
          }
      if (inside) sub.push_back(&w);
    }
    // Soundness: every witness inside R makes its projections related.  (An
    // upper-bound setter inside R still certifies the true setter is inside.)
    std::set<std::pair<int, int>> projected;
    for (const Wit* w : sub) {
      projected.emplace(w->px, w->py);
      ++r.cases;
      if (ctx.yes[t].get(w->px, w->py)) continue;
      if (ctx.unk[t].get(w->px, w->py)) {
        ++unresolved;
        continue;
      }
      r.status = Status::fail;
      r.counterexample = "R=[" + rels_str(rs) + "], witness z=" + w->z.str() +
                         " projects onto x=" + ctx.vals[w->px].str() + ", y=" +
                         ctx.vals[w->py].str() + " but rel R x y is false";
      r.millis = tm.ms();
      return r;
    }
    // Completeness: every related pair is the projection of some witness
    // inside R; when the pool misses it, fall back to zipping class members.
    for (size_t i = 0; i < ctx.vals.size(); ++i) {
      for (size_t j = 0; j < ctx.vals.size(); ++j) {
        if (!ctx.yes[t].get(static_cast<int>(i), static_cast<int>(j))) continue;
        ++r.cases;
        if (projected.count({static_cast<int>(i), static_cast<int>(j)})) continue;
        auto [mi, exi] = ops.members(ctx.vals[i], us);
        auto [mj, exj] = ops.members(ctx.vals[j], us);
        bool found = false;
        for (const auto& xv : mi) {
          for (const auto& yv : mj) {
            auto z = rel_witness(ops.rawf, xv, yv);
            if (!z) continue;
            bool inside = true;
            for (int s = 0; s < ops.arity && inside; ++s)
              for (const auto& a : set_at(ops.rawf, s, *z))
                if (!rp[s].count(a)) {
                  inside = false;
                  break;
                }
            if (inside) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (!found) ++unresolved;
        (void)exi;
        (void)exj;
      }
    }
  }
  if (unresolved > 0)
    r.note = std::to_string(unresolved) + " instances unresolved within bounds";
  if (!ctx.exhaustive)
    r.note += std::string(r.note.empty() ? "" : "; ") + "relation tuples sampled, not exhaustive";
  r.millis = tm.ms();
  return r;
}

CheckResult law_rel_comp(const Ops& ops, RelCtx& ctx, const Universes& us,
                         const CheckConfig&) {
  Timer t;
  CheckResult r;
  r.law = "rel_comp";
  long unresolved = 0;
  int n = static_cast<int>(ctx.vals.size());

  auto tuple_at = [&](const AtomRels& rs) -> int {
    auto it = ctx.index.find(rels_str(rs));
    if (it != ctx.index.end()) return it->second;
    // A sampled enumeration may lack the composite; build its matrices now.
    BitMat y(n), u(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Tri v = ops.rel(rs, ctx.vals[i], ctx.vals[j], us, us);
        if (v == Tri::yes)
          y.set(i, j);
        else if (v == Tri::unknown)
          u.set(i, j);
      }
    ctx.tuples.push_back(rs);
    ctx.yes.push_back(std::move(y));
    ctx.unk.push_back(std::move(u));
    int pos = static_cast<int>(ctx.tuples.size()) - 1;
    ctx.index.emplace(rels_str(rs), pos);
    return pos;
  };

  size_t base_tuples = ctx.tuples.size();
  for (size_t a = 0; a < base_tuples; ++a) {
    for (size_t b = 0; b < base_tuples; ++b) {
      AtomRels comp;
      for (int i = 0; i < ops.arity; ++i) comp.push_back(compose_rels(ctx.tuples[a][i], ctx.tuples[b][i]));
      int c = tuple_at(comp);
      BitMat prod = bm_mul(ctx.yes[a], ctx.yes[b]);
      BitMat maybe = bm_mul(bm_or(ctx.yes[a], ctx.unk[a]), bm_or(ctx.yes[b], ctx.unk[b]));
      r.cases += static_cast<long>(n) * n;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          bool lhs = prod.get(i, j);
          bool rhs = ctx.yes[c].get(i, j);
          if (lhs && !rhs) {
            if (ctx.unk[c].get(i, j)) {
              ++unresolved;
              continue;
            }
            int mid = -1;
            for (int k = 0; k < n; ++k)
              if (ctx.yes[a].get(i, k) && ctx.yes[b].get(k, j)) {
                mid = k;
                break;
              }
            r.status = Status::fail;
            r.counterexample = "R=[" + rels_str(ctx.tuples[a]) + "], S=[" + rels_str(ctx.tuples[b]) +
                               "]: x=" + ctx.vals[i].str() + " -R- " +
                               (mid >= 0 ? ctx.vals[mid].str() : std::string("?")) + " -S- " +
                               ctx.vals[j].str() + " but rel (R.S) x z is false";
            r.millis = t.ms();
            return r;
          }
          if (rhs && !lhs) {
            if (maybe.get(i, j)) {
              ++unresolved;
              continue;
            }
            r.status = Status::fail;
            r.counterexample = "R=[" + rels_str(ctx.tuples[a]) + "], S=[" + rels_str(ctx.tuples[b]) +
                               "]: rel (R.S) relates x=" + ctx.vals[i].str() + " and z=" +
                               ctx.vals[j].str() + " but no mid value joins them";
            r.millis = t.ms();
            return r;
          }
        }
      }
    }
  }
  if (unresolved > 0)
    r.note = std::to_string(unresolved) + " instances unresolved within bounds";
  if (!ctx.exhaustive)
    r.note += std::string(r.note.empty() ? "" : "; ") + "relation tuples sampled, not exhaustive";
  r.millis = t.ms();
  return r;
}

EntryReport run_laws(const Ops& ops, const Universes& us, const CheckConfig& cfg) {
  EntryReport rep;
  rep.name = ops.name;
  std::vector<Val> vals = ops.enumerate(us, cfg.size);
  std::vector<AtomFns> tuples = endo_fn_tuples(us, cfg);
  rep.checks.push_back(law_map_id(ops, vals, us, cfg));
  rep.checks.push_back(law_map_comp(ops, vals, us, tuples, cfg));
  rep.checks.push_back(law_set_map(ops, vals, us, tuples, cfg));
  rep.checks.push_back(law_map_cong(ops, vals, us, tuples, cfg));
  rep.checks.push_back(law_set_finite(ops, vals, us, cfg));
  RelCtx ctx = build_rel_ctx(ops, vals, us, cfg);
  rep.checks.push_back(law_in_rel(ops, ctx, us, cfg));
  rep.checks.push_back(law_rel_comp(ops, ctx, us, cfg));
  return rep;
}

}  // namespace

EntryReport laws_bnf(const FunctorSpec& f, const Universes& us, const CheckConfig& cfg) {
  return run_laws(raw_ops(f, cfg), us, cfg);
}

EntryReport laws_bnf(const QuotientSpec& q, const Universes& us, const CheckConfig& cfg) {
  return run_laws(quotient_ops(q, cfg), us, cfg);
}

}  // namespace qbnf
