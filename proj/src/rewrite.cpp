#include "qbnf/rewrite.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "qbnf/base_functors.hpp"
#include "qbnf/checks.hpp"
#include "qbnf/gallery.hpp"
#include "qbnf/regex.hpp"

namespace qbnf {

namespace {

std::vector<Val> sorted_unique(std::vector<Val> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Successor computation with a memo for small values.  Certificate sweeps
// revisit the enumerated values constantly, while the huge terms that only
// show up deep inside one join search are not worth caching: the memo admits
// values up to a size threshold and a bounded number of entries.
struct Stepper {
  const RewriteSystem& s;
  const Universes& us;
  int memo_size_limit;
  std::map<Val, std::vector<Val>> memo;

  static constexpr long kMemoEntryCap = 50000;

  std::vector<Val> operator()(const Val& v) {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    std::vector<Val> r = sorted_unique(s.step(v, us));
    if (node_count(v) <= memo_size_limit && static_cast<long>(memo.size()) < kMemoEntryCap)
      memo.emplace(v, r);
    return r;
  }
};

// One breadth-first frontier.  `expand` advances a level, skipping successors
// larger than size_bound, and reports the newly reached values; `capped` goes
// sticky once the node budget is spent, after which a failed search must not
// be trusted as a negative.
struct Frontier {
  std::set<Val> seen;
  std::vector<Val> edge;
  bool capped = false;

  explicit Frontier(const Val& start) : seen{start}, edge{start} {}

  std::vector<Val> expand(Stepper& step, long cap, int size_bound) {
    std::vector<Val> next;
    for (const Val& v : edge) {
      for (const Val& w : step(v)) {
        if (node_count(w) > size_bound || seen.count(w)) continue;
        if (static_cast<long>(seen.size()) >= cap) {
          capped = true;
          edge = sorted_unique(std::move(next));
          return edge;
        }
        seen.insert(w);
        next.push_back(w);
      }
    }
    edge = sorted_unique(std::move(next));
    return edge;
  }
};

std::optional<Val> least_common(const std::set<Val>& a, const std::set<Val>& b) {
  const std::set<Val>& small = a.size() <= b.size() ? a : b;
  const std::set<Val>& big = a.size() <= b.size() ? b : a;
  std::optional<Val> best;
  for (const Val& v : small)
    if (big.count(v) && (!best || v < *best)) best = v;
  return best;
}

constexpr int kNoSizeBound = std::numeric_limits<int>::max();

// Joins pass through values about twice the endpoints' size (a duplication of
// either side plus one joining node), so certificate searches prune anything
// larger; the slack keeps the bound honest for systems that overshoot a bit.
int join_size_bound(const Val& y, const Val& z, const CheckConfig& cfg) {
  return 2 * std::max(node_count(y), node_count(z)) + 1 + cfg.class_size_slack;
}

// Node budget for one peak of a certificate sweep; a single misbehaving peak
// must not eat the whole run's budget.
long peak_cap(const CheckConfig& cfg) { return std::max(1000L, cfg.reach_node_cap / 10); }

std::optional<Val> join_search(Stepper& step, const Val& y, const Val& z, int depth, long cap,
                               int size_bound, bool& capped) {
  if (y == z) return y;
  Frontier fy(y), fz(z);
  for (int d = 0; d < depth; ++d) {
    bool grew = false;
    for (Frontier* fr : {&fy, &fz}) {
      grew = !fr->expand(step, cap, size_bound).empty() || grew;
      if (auto u = least_common(fy.seen, fz.seen)) return u;
      if (fr->capped) {
        capped = true;
        return std::nullopt;
      }
    }
    if (!grew) break;
  }
  return std::nullopt;
}

std::string peak_str(const Val& x, const Val& y, const Val& z, int depth) {
  return "peak " + y.str() + " <~ " + x.str() + " ~> " + z.str() +
         " has no common reduct within depth " + std::to_string(depth);
}

}  // namespace

const CertFragment* ConfluenceCertificate::find(const std::string& condition) const {
  for (const CertFragment& f : fragments)
    if (f.condition == condition) return &f;
  return nullptr;
}

std::vector<Val> rw_reachable(const RewriteSystem& s, const Val& x, int depth,
                              const Universes& us, const CheckConfig& cfg) {
  Stepper step{s, us, kNoSizeBound, {}};
  Frontier fr(x);
  for (int d = 0; d < depth; ++d) {
    if (fr.expand(step, cfg.reach_node_cap, kNoSizeBound).empty()) break;
    if (fr.capped)
      throw resource_limit_error("reachable set exceeds the node cap of " +
                                 std::to_string(cfg.reach_node_cap));
  }
  return std::vector<Val>(fr.seen.begin(), fr.seen.end());
}

std::optional<Val> rw_joinable(const RewriteSystem& s, const Val& y, const Val& z, int depth,
                               const Universes& us, const CheckConfig& cfg) {
  Stepper step{s, us, kNoSizeBound, {}};
  bool capped = false;
  std::optional<Val> u =
      join_search(step, y, z, depth, cfg.reach_node_cap, kNoSizeBound, capped);
  if (!u && capped)
    throw resource_limit_error("join search exceeds the node cap of " +
                               std::to_string(cfg.reach_node_cap));
  return u;
}

CertFragment rw_strong_confluence(const RewriteSystem& s, const FunctorSpec& f,
                                  const Universes& us, const CheckConfig& cfg) {
  CertFragment frag;
  frag.condition = "strong_confluence";
  frag.mode = "strong";
  Stepper step{s, us, 2 * cfg.size + cfg.class_size_slack, {}};
  for (const Val& x : enumerate_vals(f, us, cfg.size)) {
    const std::vector<Val> succs = step(x);
    for (size_t i = 0; i < succs.size(); ++i) {
      for (size_t j = i + 1; j < succs.size(); ++j) {
        const Val& y = succs[i];
        const Val& z = succs[j];
        ++frag.cases;
        std::vector<Val> sy = step(y);
        std::set<Val> near_y(sy.begin(), sy.end());
        near_y.insert(y);
        std::vector<Val> sz = step(z);
        std::set<Val> near_z(sz.begin(), sz.end());
        near_z.insert(z);
        if (least_common(near_y, near_z)) continue;

        // Interleaved escalation: grow both reaches a level at a time, hoping
        // for a join one step from either end (the strong form); remember a
        // plain join as the fallback.
        int bound = join_size_bound(y, z, cfg);
        long cap = peak_cap(cfg);
        Frontier fy(y), fz(z);
        bool strong_hit = false, join_hit = false, capped = false;
        for (int d = 0; d < cfg.join_depth && !strong_hit; ++d) {
          bool grew = false;
          for (auto [fr, near, other] :
               {std::tuple(&fz, &near_y, &fy), std::tuple(&fy, &near_z, &fz)}) {
            std::vector<Val> fresh = fr->expand(step, cap, bound);
            grew = grew || !fresh.empty();
            for (const Val& v : fresh) {
              if (near->count(v)) {
                strong_hit = true;
                break;
              }
              if (other->seen.count(v)) join_hit = true;
            }
            capped = capped || fr->capped;
            if (strong_hit || capped) break;
          }
          if (!grew || capped) break;
        }
        if (strong_hit) continue;
        if (join_hit) {
          frag.mode = "bounded-join";
          continue;
        }
        frag.status = capped ? Status::resource : Status::fail;
        frag.counterexample = peak_str(x, y, z, cfg.join_depth);
        if (capped) frag.note = "node budget hit before a verdict on this peak";
        return frag;
      }
    }
  }
  return frag;
}

CertFragment rw_closure_contains(const RewriteSystem& s, const EquivSpec& e,
                                 const FunctorSpec& f, const Universes& us,
                                 const CheckConfig& cfg) {
  CertFragment frag;
  frag.condition = "closure_containment";
  Stepper step{s, us, 2 * cfg.size + cfg.class_size_slack, {}};
  for (const Val& x : enumerate_vals(f, us, cfg.size)) {
    for (const Val& y : sorted_unique(e.neighbors(x, us))) {
      ++frag.cases;
      bool capped = false;
      if (join_search(step, x, y, cfg.join_depth, peak_cap(cfg), join_size_bound(x, y, cfg),
                      capped))
        continue;
      frag.status = capped ? Status::resource : Status::fail;
      frag.counterexample = "generator instance x=" + x.str() + ", y=" + y.str() +
                            " is not joinable within depth " + std::to_string(cfg.join_depth);
      frag.note = capped ? "node budget hit before a verdict" : "undecided within bounds";
      return frag;
    }
  }
  return frag;
}

CertFragment rw_steps_within(const RewriteSystem& s, const EquivSpec& e, const FunctorSpec& f,
                             const Universes& us, const CheckConfig& cfg) {
  CertFragment frag;
  frag.condition = "steps_within_equivalence";
  Stepper step{s, us, 2 * cfg.size + cfg.class_size_slack, {}};
  for (const Val& x : enumerate_vals(f, us, cfg.size)) {
    for (const Val& y : step(x)) {
      ++frag.cases;
      if (e.decide(x, y)) continue;
      frag.status = Status::fail;
      frag.counterexample =
          "step " + x.str() + " ~> " + y.str() + " leaves the equivalence class";
      return frag;
    }
  }
  return frag;
}

CertFragment rw_factors_projections(const RewriteSystem& s, const FunctorSpec& f,
                                    const EquivSpec& e, const Universes& us,
                                    const CheckConfig& cfg) {
  CertFragment frag;
  frag.condition = "projection_factoring";
  Universes pus;
  AtomFns fsts, snds;
  for (const Universe& u : us) {
    Universe pu = rel_universe(full_rel(u, u));
    fsts.push_back(fst_fn(pu));
    snds.push_back(snd_fn(pu));
    pus.push_back(std::move(pu));
  }
  Stepper plain{s, us, 2 * cfg.size + cfg.class_size_slack, {}};
  Stepper lifted{s, pus, 2 * cfg.size + cfg.class_size_slack, {}};
  auto subset = [](const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (const Val& x : enumerate_vals(f, pus, cfg.size)) {
    std::vector<AtomSet> sx;
    for (int i = 0; i < f.arity; ++i) sx.push_back(set_at(f, i, x));

    // Candidate pool: x's own bounded reach under the pair-instantiated
    // system, grown one level at a time and shared across this x's steps.
    std::vector<Val> pool{x};
    Frontier fr(x);
    int grown = 0;
    bool capped = false;
    int bound = 2 * node_count(x) + 1 + cfg.class_size_slack;
    auto grow = [&]() {
      if (grown >= cfg.join_depth || capped) return false;
      std::vector<Val> fresh = fr.expand(lifted, peak_cap(cfg), bound);
      capped = fr.capped;
      ++grown;
      pool.insert(pool.end(), fresh.begin(), fresh.end());
      return !fresh.empty();
    };

    for (int side = 0; side < 2; ++side) {
      const AtomFns& pr = side == 0 ? fsts : snds;
      Val base = fmap(f, pr, x);
      for (const Val& y : plain(base)) {
        ++frag.cases;
        bool found = false;
        size_t scanned = 0;
        while (!found) {
          for (; scanned < pool.size() && !found; ++scanned) {
            const Val& cand = pool[scanned];
            if (fmap(f, pr, cand) != y) continue;
            bool shrinks = true;
            for (int i = 0; i < f.arity && shrinks; ++i)
              shrinks = subset(set_at(f, i, cand), sx[static_cast<size_t>(i)]);
            found = shrinks && e.decide(x, cand);
          }
          if (found || !grow()) break;
        }
        if (found) continue;
        frag.status = capped ? Status::resource : Status::fail;
        frag.counterexample = std::string("projection ") + (side == 0 ? "fst" : "snd") +
                              " of x=" + x.str() + " steps to y=" + y.str() +
                              " but no equivalent preimage with smaller setters exists in bounds";
        if (capped) frag.note = "node budget hit before a verdict";
        return frag;
      }
    }
  }
  return frag;
}

ConfluenceCertificate certify_subdistributivity(const RewriteSystem& s, const EquivSpec& e,
                                                const FunctorSpec& f, const CheckConfig& cfg) {
  ConfluenceCertificate cert;
  cert.system = s.name;
  cert.equivalence = e.name;
  cert.bounds = "universe " + std::to_string(cfg.universe) + " plus one fresh atom, size " +
                std::to_string(cfg.size) + ", join depth " + std::to_string(cfg.join_depth) +
                ", pair stage at universe " + std::to_string(cfg.universe);
  Universes us = token_universes(f.arity, cfg.universe);
  Universes usf = token_universes(f.arity, cfg.universe + 1);

  CheckResult mr = check_map_respect(f, e, us, cfg);
  CertFragment gate;
  gate.condition = "mapper_respect_gate";
  gate.status = mr.status;
  gate.cases = mr.cases;
  gate.counterexample = mr.counterexample;
  gate.note = mr.note;
  cert.fragments.push_back(gate);

  if (mr.status == Status::pass) {
    cert.fragments.push_back(rw_steps_within(s, e, f, usf, cfg));
    cert.fragments.push_back(rw_strong_confluence(s, f, usf, cfg));
    cert.fragments.push_back(rw_closure_contains(s, e, f, usf, cfg));
    cert.fragments.push_back(rw_factors_projections(s, f, e, us, cfg));
  }
  cert.certified = true;
  for (const CertFragment& fr : cert.fragments)
    cert.certified = cert.certified && fr.status == Status::pass;
  return cert;
}

RewriteSystem rw_dlist_removing() {
  RewriteSystem s;
  s.name = "dlist-removing";
  s.step = [](const Val& x, const Universes&) {
    std::vector<Atom> el = list_elems_of(x);
    std::vector<Val> out;
    for (size_t i = 0; i < el.size(); ++i) {
      bool later = false;
      for (size_t j = i + 1; j < el.size() && !later; ++j) later = el[j] == el[i];
      if (!later) continue;
      std::vector<Atom> t(el);
      t.erase(t.begin() + static_cast<long>(i));
      out.push_back(mk_list(t));
    }
    return sorted_unique(std::move(out));
  };
  return s;
}

RewriteSystem rw_dlist_inserting() {
  RewriteSystem s;
  s.name = "dlist-inserting";
  s.step = [](const Val& x, const Universes&) {
    std::vector<Atom> el = list_elems_of(x);
    std::vector<Val> out;
    for (size_t i = 0; i <= el.size(); ++i) {
      for (size_t j = i; j < el.size(); ++j) {
        std::vector<Atom> t(el);
        t.insert(t.begin() + static_cast<long>(i), el[j]);
        out.push_back(mk_list(t));
      }
    }
    return sorted_unique(std::move(out));
  };
  return s;
}

RewriteSystem rw_rotate() {
  RewriteSystem s;
  s.name = "rotate";
  s.step = [](const Val& x, const Universes&) {
    std::vector<Atom> el = list_elems_of(x);
    if (!el.empty()) std::rotate(el.begin(), el.begin() + 1, el.end());
    return std::vector<Val>{mk_list(el)};
  };
  return s;
}

RewriteSystem rw_fim() {
  RewriteSystem s;
  s.name = "fim-duplicating";
  s.step = [](const Val& x, const Universes&) {
    std::vector<Atom> el = list_elems_of(x);
    std::vector<Val> out;
    for (size_t i = 0; i < el.size(); ++i) {
      for (size_t j = i + 1; j <= el.size(); ++j) {
        std::vector<Atom> t;
        t.insert(t.end(), el.begin(), el.begin() + static_cast<long>(j));
        t.insert(t.end(), el.begin() + static_cast<long>(i), el.begin() + static_cast<long>(j));
        t.insert(t.end(), el.begin() + static_cast<long>(j), el.end());
        out.push_back(mk_list(t));
      }
    }
    return sorted_unique(std::move(out));
  };
  return s;
}

RewriteSystem rw_fim_collapsing() {
  RewriteSystem s;
  s.name = "fim-collapsing";
  s.step = [](const Val& x, const Universes&) {
    std::vector<Atom> el = list_elems_of(x);
    std::vector<Val> out;
    for (size_t len = 1; 2 * len <= el.size(); ++len) {
      for (size_t i = 0; i + 2 * len <= el.size(); ++i) {
        bool doubled = true;
        for (size_t k = 0; k < len && doubled; ++k) doubled = el[i + k] == el[i + len + k];
        if (!doubled) continue;
        std::vector<Atom> t(el);
        t.erase(t.begin() + static_cast<long>(i), t.begin() + static_cast<long>(i + len));
        out.push_back(mk_list(t));
      }
    }
    return sorted_unique(std::move(out));
  };
  return s;
}

RewriteSystem rw_fset_moves() {
  RewriteSystem s;
  s.name = "fset-moves";
  // Swaps and duplications only: removal moves would let a projection forget
  // an atom the pair level still remembers, which is exactly the projection-
  // factoring failure of the removing list orientation.
  s.step = [](const Val& x, const Universes&) {
    std::vector<Atom> el = list_elems_of(x);
    std::vector<Val> out;
    for (size_t i = 0; i + 1 < el.size(); ++i) {
      std::vector<Atom> t(el);
      std::swap(t[i], t[i + 1]);
      out.push_back(mk_list(t));
    }
    for (size_t i = 0; i < el.size(); ++i) {
      std::vector<Atom> t(el);
      t.insert(t.begin() + static_cast<long>(i), el[i]);
      out.push_back(mk_list(t));
    }
    return sorted_unique(std::move(out));
  };
  return s;
}

RewriteSystem rw_aci() {
  RewriteSystem s;
  s.name = "aci";
  s.step = [](const Val& x, const Universes&) { return aci_step(x); };
  return s;
}

RewriteSystem rw_acidz() {
  RewriteSystem s;
  s.name = "acidz";
  s.step = [](const Val& x, const Universes&) { return acidz_step(x); };
  return s;
}

}  // namespace qbnf
