#include "qbnf/checks.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "qbnf/bitmat.hpp"

namespace qbnf {
namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  }
};

std::string set_str(const AtomSet& s, int sort) {
  std::string out = "{";
  bool first = true;
  for (const Atom& a : s) {
    if (!first) out += ",";
    out += a.str(sort);
    first = false;
  }
  return out + "}";
}

std::string fns_str(const AtomFns& fns) {
  std::string out = "[";
  for (size_t i = 0; i < fns.size(); ++i) {
    if (i) out += "; ";
    out += "sort" + std::to_string(i) + " " + fns[i].str();
  }
  return out + "]";
}

std::string rels_str(const AtomRels& rs) {
  std::string out = "[";
  for (size_t i = 0; i < rs.size(); ++i) {
    if (i) out += "; ";
    out += "sort" + std::to_string(i) + " " + rs[i].str();
  }
  return out + "]";
}

// Cartesian product of per-sort function lists.
std::vector<AtomFns> fn_tuples(const std::vector<std::vector<AtomFn>>& per_sort) {
  std::vector<AtomFns> out{{}};
  for (const auto& fs : per_sort) {
    std::vector<AtomFns> next;
    next.reserve(out.size() * fs.size());
    for (const AtomFns& t : out)
      for (const AtomFn& f : fs) {
        AtomFns t2 = t;
        t2.push_back(f);
        next.push_back(std::move(t2));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<AtomFns> endo_fn_tuples(const Universes& us, long limit) {
  std::vector<std::vector<AtomFn>> per_sort;
  for (const Universe& u : us) per_sort.push_back(all_fns(u, u, limit));
  return fn_tuples(per_sort);
}

std::vector<AtomFns> perm_tuples(const Universes& us) {
  std::vector<std::vector<AtomFn>> per_sort;
  for (const Universe& u : us) per_sort.push_back(all_permutations(u));
  return fn_tuples(per_sort);
}

BitMat sim_matrix(const EquivSpec& e, const std::vector<Val>& vs) {
  const int n = static_cast<int>(vs.size());
  BitMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (e.decide(vs[i], vs[j])) m.set(i, j);
  return m;
}

// Memoized bounded class enumeration for one checker run.
struct ClassCache {
  const EquivSpec& e;
  const FunctorSpec& f;
  const Universes& us;
  const CheckConfig& cfg;
  std::map<Val, ClassEnum> memo;

  const ClassEnum& get(const Val& x) {
    auto it = memo.find(x);
    if (it == memo.end()) it = memo.emplace(x, class_enum(e, f, x, us, cfg)).first;
    return it->second;
  }
};

uint32_t atom_mask(const AtomSet& s, const Universe& u) {
  uint32_t m = 0;
  for (int b = 0; b < u.size(); ++b)
    if (s.count(u.atoms[b])) m |= (uint32_t{1} << b);
  return m;
}

AtomSet mask_atoms(uint32_t m, const Universe& u) {
  AtomSet s;
  for (int b = 0; b < u.size(); ++b)
    if (m & (uint32_t{1} << b)) s.insert(u.atoms[b]);
  return s;
}

// Per-class-member tuples of per-sort atom masks, deduplicated.
std::vector<std::vector<uint32_t>> member_mask_tuples(const FunctorSpec& f, const Universes& us,
                                                      const ClassEnum& c) {
  std::set<std::vector<uint32_t>> dedup;
  for (const Val& m : c.members) {
    std::vector<uint32_t> t(us.size());
    for (size_t i = 0; i < us.size(); ++i) t[i] = atom_mask(set_at(f, static_cast<int>(i), m), us[i]);
    dedup.insert(std::move(t));
  }
  return {dedup.begin(), dedup.end()};
}

}  // namespace

CheckResult check_equivp(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                         const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "equivp";
  std::vector<Val> vs = enumerate_vals(f, us, cfg.size);
  const int n = static_cast<int>(vs.size());
  BitMat sim = sim_matrix(e, vs);
  for (int i = 0; i < n && r.status == Status::pass; ++i) {
    ++r.cases;
    if (!sim.get(i, i)) {
      r.status = Status::fail;
      r.counterexample = "not reflexive at x=" + vs[i].str();
    }
  }
  for (int i = 0; i < n && r.status == Status::pass; ++i)
    for (int j = i + 1; j < n; ++j) {
      ++r.cases;
      if (sim.get(i, j) != sim.get(j, i)) {
        r.status = Status::fail;
        r.counterexample = "not symmetric at x=" + vs[i].str() + ", y=" + vs[j].str();
        break;
      }
    }
  for (int i = 0; i < n && r.status == Status::pass; ++i)
    for (int j = 0; j < n && r.status == Status::pass; ++j) {
      if (!sim.get(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (!sim.get(j, k)) continue;
        ++r.cases;
        if (!sim.get(i, k)) {
          r.status = Status::fail;
          r.counterexample = "not transitive: x=" + vs[i].str() + " ~ y=" + vs[j].str() +
                             " ~ z=" + vs[k].str() + " but x !~ z";
          break;
        }
      }
    }
  r.millis = t.ms();
  return r;
}

CheckResult check_map_respect(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                              const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "map_respect";
  std::vector<Val> vs = enumerate_vals(f, us, cfg.size);
  const int n = static_cast<int>(vs.size());
  BitMat sim = sim_matrix(e, vs);
  std::vector<std::pair<int, int>> rel_pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sim.get(i, j)) rel_pairs.emplace_back(i, j);
  for (const AtomFns& g : endo_fn_tuples(us, cfg.fn_enum_limit)) {
    std::vector<Val> mapped;
    mapped.reserve(n);
    for (const Val& v : vs) mapped.push_back(fmap(f, g, v));
    for (auto [i, j] : rel_pairs) {
      ++r.cases;
      if (!e.decide(mapped[i], mapped[j])) {
        r.status = Status::fail;
        r.counterexample = "x=" + vs[i].str() + " ~ y=" + vs[j].str() + " but map g x=" +
                           mapped[i].str() + " !~ map g y=" + mapped[j].str() +
                           " under g=" + fns_str(g);
        r.millis = t.ms();
        return r;
      }
    }
  }
  r.millis = t.ms();
  return r;
}

CheckResult check_set_respect(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                              const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "set_respect";
  std::vector<Val> vs = enumerate_vals(f, us, cfg.size);
  const int n = static_cast<int>(vs.size());
  BitMat sim = sim_matrix(e, vs);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!sim.get(i, j)) continue;
      ++r.cases;
      for (int s = 0; s < f.arity; ++s) {
        AtomSet a = set_at(f, s, vs[i]);
        AtomSet b = set_at(f, s, vs[j]);
        if (a != b) {
          r.status = Status::fail;
          r.counterexample = "x=" + vs[i].str() + " ~ y=" + vs[j].str() + " but sort-" +
                             std::to_string(s) + " atoms differ: " + set_str(a, s) + " vs " +
                             set_str(b, s);
          r.millis = t.ms();
          return r;
        }
      }
    }
  r.millis = t.ms();
  return r;
}

CheckResult check_wide_intersection(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                                    const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "wide_intersection";
  std::vector<Val> vs = enumerate_vals(f, us, cfg.size);
  ClassCache cls{e, f, us, cfg, {}};
  bool truncated_miss = false;
  std::string trunc_detail;
  for (const Val& x : vs) {
    const ClassEnum& c = cls.get(x);
    auto members = member_mask_tuples(f, us, c);
    for (size_t s = 0; s < us.size(); ++s) {
      const uint32_t nsubsets = uint32_t{1} << us[s].size();
      // Families are nonempty sets of atom subsets; the hypothesis keeps only
      // those with a nonempty common core.
      for (uint32_t fam = 1; fam < (uint32_t{1} << nsubsets); ++fam) {
        uint32_t inter = (uint32_t{1} << us[s].size()) - 1;
        for (uint32_t a = 0; a < nsubsets; ++a)
          if (fam & (uint32_t{1} << a)) inter &= a;
        if (inter == 0) continue;
        ++r.cases;
        bool lhs = true;
        for (uint32_t a = 0; a < nsubsets && lhs; ++a) {
          if (!(fam & (uint32_t{1} << a))) continue;
          bool hit = false;
          for (const auto& m : members)
            if ((m[s] & ~a) == 0) {
              hit = true;
              break;
            }
          lhs = hit;
        }
        if (!lhs) continue;
        bool rhs = false;
        for (const auto& m : members)
          if ((m[s] & ~inter) == 0) {
            rhs = true;
            break;
          }
        if (!rhs) {
          if (c.exhausted) {
            r.status = Status::fail;
            r.counterexample = "x=" + x.str() + ", sort " + std::to_string(s) +
                               ": class meets every restriction of the family but no member fits "
                               "the core " +
                               set_str(mask_atoms(inter, us[s]), static_cast<int>(s));
            r.millis = t.ms();
            return r;
          }
          if (!truncated_miss) {
            truncated_miss = true;
            trunc_detail = "inconclusive at x=" + x.str() + " (class enumeration truncated)";
          }
        }
      }
    }
  }
  if (truncated_miss) {
    r.status = Status::resource;
    r.counterexample = trunc_detail;
  }
  r.millis = t.ms();
  return r;
}

CheckResult check_preimage(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                           const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "preimage_preservation";
  std::vector<Val> vs = enumerate_vals(f, us, cfg.size);
  ClassCache cls{e, f, us, cfg, {}};
  // All tuples of atom subsets, one per sort.
  std::vector<std::vector<uint32_t>> subset_tuples{{}};
  for (const Universe& u : us) {
    std::vector<std::vector<uint32_t>> next;
    for (const auto& tup : subset_tuples)
      for (uint32_t a = 0; a < (uint32_t{1} << u.size()); ++a) {
        auto t2 = tup;
        t2.push_back(a);
        next.push_back(std::move(t2));
      }
    subset_tuples = std::move(next);
  }
  bool truncated_miss = false;
  std::string trunc_detail;
  for (const AtomFns& g : endo_fn_tuples(us, cfg.fn_enum_limit)) {
    // Per sort and subset: the mask of atoms g sends into the subset.
    std::vector<std::vector<uint32_t>> pre(us.size());
    for (size_t s = 0; s < us.size(); ++s) {
      pre[s].resize(uint32_t{1} << us[s].size());
      for (uint32_t a = 0; a < pre[s].size(); ++a) {
        uint32_t m = 0;
        for (int b = 0; b < us[s].size(); ++b) {
          Atom img = g[s](us[s].atoms[b]);
          uint32_t amask = a;
          if (atom_mask({img}, us[s]) & amask) m |= (uint32_t{1} << b);
        }
        pre[s][a] = m;
      }
    }
    for (const Val& x : vs) {
      Val mx = fmap(f, g, x);
      const ClassEnum& cx = cls.get(x);
      const ClassEnum& cm = cls.get(mx);
      auto mem_x = member_mask_tuples(f, us, cx);
      auto mem_m = member_mask_tuples(f, us, cm);
      for (const auto& as : subset_tuples) {
        // Only targets every component of which has a nonempty g-preimage
        // constrain the class; a vacuous fiber admits no relocated member.
        bool fibered = true;
        for (size_t s = 0; s < us.size() && fibered; ++s) fibered = pre[s][as[s]] != 0;
        if (!fibered) continue;
        ++r.cases;
        bool lhs = false;
        for (const auto& m : mem_m) {
          bool inside = true;
          for (size_t s = 0; s < us.size() && inside; ++s) inside = (m[s] & ~as[s]) == 0;
          if (inside) {
            lhs = true;
            break;
          }
        }
        if (!lhs) continue;
        bool rhs = false;
        for (const auto& m : mem_x) {
          bool inside = true;
          for (size_t s = 0; s < us.size() && inside; ++s) inside = (m[s] & ~pre[s][as[s]]) == 0;
          if (inside) {
            rhs = true;
            break;
          }
        }
        if (!rhs) {
          if (cx.exhausted) {
            std::string asets = "[";
            for (size_t s = 0; s < us.size(); ++s) {
              if (s) asets += "; ";
              asets += set_str(mask_atoms(as[s], us[s]), static_cast<int>(s));
            }
            asets += "]";
            r.status = Status::fail;
            r.counterexample = "x=" + x.str() + ", g=" + fns_str(g) + ", A=" + asets +
                               ": map g x has a class member inside F<A> but no class member of x "
                               "fits the preimages";
            r.millis = t.ms();
            return r;
          }
          if (!truncated_miss) {
            truncated_miss = true;
            trunc_detail = "inconclusive at x=" + x.str() + " (class enumeration truncated)";
          }
        }
      }
    }
  }
  if (truncated_miss) {
    r.status = Status::resource;
    r.counterexample = trunc_detail;
  }
  r.millis = t.ms();
  return r;
}

CheckResult check_subdistributivity(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                                    const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "subdistributivity";
  Rng rng(cfg.seed);
  // Extend the value list so middle elements and class witnesses slightly
  // larger than the checked values are available.
  std::vector<Val> vs = enumerate_vals(f, us, cfg.size + cfg.witness_slack);
  const int n = static_cast<int>(vs.size());
  int base_count = 0;
  while (base_count < n && fsize(f, vs[base_count]) <= cfg.size) ++base_count;
  BitMat sim = sim_matrix(e, vs);

  std::vector<std::vector<AtomRel>> per_sort;
  bool exhaustive = true;
  for (const Universe& u : us) {
    auto [rels, exh] = enumerate_rels(u, u, cfg, rng);
    exhaustive = exhaustive && exh;
    per_sort.push_back(std::move(rels));
  }
  // Relation-tuple registry; compositions of registered tuples are registered
  // on demand so their matrices are built exactly once.
  using TupleKey = std::vector<std::set<std::pair<Atom, Atom>>>;
  std::vector<AtomRels> tuples;
  std::map<TupleKey, int> tindex;
  auto key_of = [](const AtomRels& rs) {
    TupleKey k;
    for (const AtomRel& x : rs) k.push_back(x.pairs);
    return k;
  };
  auto reg = [&](const AtomRels& rs) {
    TupleKey k = key_of(rs);
    auto it = tindex.find(k);
    if (it != tindex.end()) return it->second;
    int idx = static_cast<int>(tuples.size());
    tuples.push_back(rs);
    tindex.emplace(std::move(k), idx);
    return idx;
  };
  {
    std::vector<AtomRels> acc{{}};
    for (const auto& rels : per_sort) {
      std::vector<AtomRels> next;
      for (const AtomRels& tup : acc)
        for (const AtomRel& x : rels) {
          AtomRels t2 = tup;
          t2.push_back(x);
          next.push_back(std::move(t2));
        }
      acc = std::move(next);
    }
    for (const AtomRels& tup : acc) reg(tup);
  }
  const int initial_tuples = static_cast<int>(tuples.size());

  std::vector<BitMat> mats;
  std::vector<char> built, unknown;
  auto mat = [&](int idx) -> const BitMat& {
    if (idx >= static_cast<int>(mats.size())) {
      mats.resize(idx + 1);
      built.resize(idx + 1, 0);
      unknown.resize(idx + 1, 0);
    }
    if (!built[idx]) {
      BitMat m(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Tri v = rel_tri(f, tuples[idx], vs[i], vs[j], cfg);
          if (v == Tri::yes) m.set(i, j);
          if (v == Tri::unknown) unknown[idx] = 1;
        }
      mats[idx] = std::move(m);
      built[idx] = 1;
    }
    return mats[idx];
  };

  std::map<int, BitMat> lhs_left;   // mat(R) * sim
  std::map<int, BitMat> rhs_full;   // sim * mat(C) * sim
  bool truncated_miss = false;
  std::string trunc_detail;
  for (int iR = 0; iR < initial_tuples; ++iR) {
    for (int iS = 0; iS < initial_tuples; ++iS) {
      AtomRels comp = compose_rels(tuples[iR], tuples[iS]);
      bool nonempty = true;
      for (const AtomRel& c : comp) nonempty = nonempty && !c.empty();
      if (!nonempty) continue;
      int iC = reg(comp);
      auto lit = lhs_left.find(iR);
      if (lit == lhs_left.end()) lit = lhs_left.emplace(iR, bm_mul(mat(iR), sim)).first;
      BitMat lhs = bm_mul(lit->second, mat(iS));
      auto rit = rhs_full.find(iC);
      if (rit == rhs_full.end())
        rit = rhs_full.emplace(iC, bm_mul(sim, bm_mul(mat(iC), sim))).first;
      const BitMat& rhs = rit->second;
      ++r.cases;
      for (int i = 0; i < base_count; ++i) {
        for (int j = 0; j < base_count; ++j) {
          if (!lhs.get(i, j) || rhs.get(i, j)) continue;
          // Candidate violation; make sure no inconclusive relator call hides
          // a composite witness.
          bool any_unknown = false;
          for (int i2 = 0; i2 < n && !any_unknown; ++i2) {
            if (!sim.get(i, i2)) continue;
            for (int j2 = 0; j2 < n && !any_unknown; ++j2) {
              if (!sim.get(j, j2)) continue;
              if (rel_tri(f, comp, vs[i2], vs[j2], cfg) == Tri::unknown) any_unknown = true;
            }
          }
          if (any_unknown) {
            if (!truncated_miss) {
              truncated_miss = true;
              trunc_detail = "inconclusive at x=" + vs[i].str() + ", z=" + vs[j].str();
            }
            continue;
          }
          int mid = -1;
          for (int k = 0; k < n; ++k)
            if (lit->second.get(i, k) && mat(iS).get(k, j)) {
              mid = k;
              break;
            }
          r.status = Status::fail;
          r.counterexample = "R=" + rels_str(tuples[iR]) + ", S=" + rels_str(tuples[iS]) +
                             ", x=" + vs[i].str() + ", z=" + vs[j].str() +
                             (mid >= 0 ? ", via y=" + vs[mid].str() : std::string()) +
                             ": rel R ; ~ ; rel S holds but no class members are related by rel "
                             "(R o S)";
          if (!exhaustive) r.note = "relation tuples sampled, not exhaustive";
          r.millis = t.ms();
          return r;
        }
      }
    }
  }
  if (truncated_miss) {
    r.status = Status::resource;
    r.counterexample = trunc_detail;
  }
  if (!exhaustive) r.note = "relation tuples sampled, not exhaustive";
  r.millis = t.ms();
  return r;
}

CheckResult check_equiv_naturality(const FunctorSpec& f, const EquivSpec& e, const Universes& us,
                                   const CheckConfig& cfg) {
  Timer t;
  CheckResult r;
  r.law = "equiv_naturality";
  auto sweep = [&](const Universes& uu, const char* tag) -> bool {
    std::vector<Val> vs = enumerate_vals(f, uu, cfg.size);
    const int n = static_cast<int>(vs.size());
    BitMat sim = sim_matrix(e, vs);
    for (const AtomFns& p : perm_tuples(uu)) {
      std::vector<Val> mapped;
      mapped.reserve(n);
      for (const Val& v : vs) mapped.push_back(fmap(f, p, v));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          ++r.cases;
          if (e.decide(mapped[i], mapped[j]) != sim.get(i, j)) {
            r.status = Status::fail;
            r.counterexample = std::string("renaming changes the verdict (") + tag +
                               "): x=" + vs[i].str() + ", y=" + vs[j].str() +
                               ", p=" + fns_str(p) + ", decide(x,y)=" +
                               (sim.get(i, j) ? "true" : "false");
            return false;
          }
        }
    }
    return true;
  };
  if (sweep(us, "base universes")) sweep(opt_universes(us), "extended universes");
  r.millis = t.ms();
  return r;
}

std::vector<CheckResult> check_all_conditions(const FunctorSpec& f, const EquivSpec& e,
                                              const Universes& us, const CheckConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(check_equivp(f, e, us, cfg));
  out.push_back(check_map_respect(f, e, us, cfg));
  out.push_back(check_set_respect(f, e, token_universes(f.arity, cfg.set_respect_universe), cfg));
  out.push_back(check_wide_intersection(f, e, us, cfg));
  out.push_back(check_preimage(f, e, us, cfg));
  out.push_back(check_subdistributivity(f, e, us, cfg));
  out.push_back(check_equiv_naturality(f, e, us, cfg));
  return out;
}

}  // namespace qbnf
