#include "qbnf/witness.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>

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

void wt_validate(const FunctorSpec& f, const Witness& w) {
  if (!std::is_sorted(w.indices.begin(), w.indices.end()) ||
      std::adjacent_find(w.indices.begin(), w.indices.end()) != w.indices.end())
    throw malformed_value_error("witness " + w.name + " must declare sorted, distinct indices");
  for (int i : w.indices)
    if (i < 0 || i >= f.arity)
      throw malformed_value_error("witness " + w.name + " declares sort " + std::to_string(i) +
                                  " outside container " + f.name);
  if (!w.build) throw malformed_value_error("witness " + w.name + " has no builder");
}

// Every argument tuple: position k ranges over the universe of indices[k].
std::vector<std::vector<Atom>> arg_tuples(const std::vector<int>& idx, const Universes& us,
                                          long limit) {
  long total = 1;
  for (int i : idx) {
    total *= us[static_cast<std::size_t>(i)].size();
    if (total > limit)
      throw resource_limit_error("witness argument sweep exceeds " + std::to_string(limit) +
                                 " tuples");
  }
  std::vector<std::vector<Atom>> out{{}};
  for (int i : idx) {
    std::vector<std::vector<Atom>> next;
    for (const auto& t : out)
      for (const Atom& a : us[static_cast<std::size_t>(i)].atoms) {
        auto t2 = t;
        t2.push_back(a);
        next.push_back(std::move(t2));
      }
    out = std::move(next);
  }
  return out;
}

std::string args_str(const std::vector<int>& idx, const std::vector<Atom>& args) {
  std::string s = "(";
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) s += ",";
    s += args[k].str(idx[k]);
  }
  return s + ")";
}

std::string fns_str(const AtomFns& fns) {
  std::string s = "(";
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (i) s += ", ";
    s += fns[i].str();
  }
  return s + ")";
}

// The one sweep both wt_check overloads share; `setter` abstracts over the
// raw setter (always exact) and the quotient setter (exact unless its class
// search was truncated).
CheckResult wt_check_impl(const FunctorSpec& shape, const std::string& on, const Witness& w,
                          const Universes& us, const CheckConfig& cfg,
                          const std::function<QSet(int, const Val&)>& setter) {
  Timer t;
  CheckResult r;
  r.law = "witness_property";
  r.note = "witness " + w.name + " on " + on;
  wt_validate(shape, w);
  std::optional<std::string> soft;  // violation seen only through an inexact setter
  for (const auto& args : arg_tuples(w.indices, us, cfg.fn_enum_limit)) {
    Val v = w.build(args);
    validate(shape, v);
    ++r.cases;
    for (int i = 0; i < shape.arity; ++i) {
      auto pos = std::find(w.indices.begin(), w.indices.end(), i);
      QSet qs = setter(i, v);
      for (const Atom& a : qs.atoms) {
        std::string detail;
        if (pos == w.indices.end())
          detail = w.name + args_str(w.indices, args) + ": sort-" + std::to_string(i) + " atom " +
                   a.str(i) + " appears but the sort is undeclared";
        else if (a != args[static_cast<std::size_t>(pos - w.indices.begin())])
          detail = w.name + args_str(w.indices, args) + ": sort-" + std::to_string(i) + " atom " +
                   a.str(i) + " differs from the supplied argument";
        else
          continue;
        if (qs.exact) {
          r.status = Status::fail;
          r.counterexample = detail;
          r.millis = t.ms();
          return r;
        }
        if (!soft) soft = detail + " (setter is an unexhausted upper bound)";
      }
    }
  }
  if (soft) {
    r.status = Status::resource;
    r.counterexample = *soft;
  }
  r.millis = t.ms();
  return r;
}

}  // namespace

CheckResult wt_check(const FunctorSpec& f, const Witness& w, const Universes& us,
                     const CheckConfig& cfg) {
  return wt_check_impl(f, f.name, w, us, cfg,
                       [&](int i, const Val& v) { return QSet{set_at(f, i, v), true}; });
}

CheckResult wt_check(const QuotientSpec& q, const Witness& w, const Universes& us,
                     const CheckConfig& cfg) {
  return wt_check_impl(q.raw, q.name, w, us, cfg,
                       [&](int i, const Val& v) { return q.set_at(i, v, us, cfg); });
}

std::variant<Witness, Refusal> wt_lift(const QuotientSpec& q, const Witness& w,
                                       const Universes& us, const CheckConfig& cfg) {
  Witness lifted;
  lifted.name = w.name;
  lifted.indices = w.indices;
  lifted.build = [q, cfg, us, raw = w.build](const std::vector<Atom>& args) {
    return q.abs(raw(args), us, cfg);
  };
  CheckResult r = wt_check(q, lifted, us, cfg);
  if (r.status != Status::pass)
    return Refusal{"witness_property", r.counterexample.value_or(r.note)};
  return lifted;
}

std::vector<Witness> wt_minimal(const std::vector<Witness>& ws) {
  std::vector<std::vector<int>> idx;
  idx.reserve(ws.size());
  for (const Witness& w : ws) {
    std::vector<int> s = w.indices;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    idx.push_back(std::move(s));
  }
  auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::vector<Witness> out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < ws.size() && !drop; ++j) {
      if (j == i || !subset(idx[j], idx[i])) continue;
      if (!subset(idx[i], idx[j])) drop = true;                  // strictly fewer demands
      else if (ws[j].name < ws[i].name) drop = true;             // same demands, earlier name
      else if (ws[j].name == ws[i].name && j < i) drop = true;   // duplicate, keep one copy
    }
    if (!drop) out.push_back(ws[i]);
  }
  std::sort(out.begin(), out.end(), [](const Witness& a, const Witness& b) {
    if (a.indices != b.indices) return a.indices < b.indices;
    return a.name < b.name;
  });
  return out;
}

FunctorSpec st_restrict(const FunctorSpec& f, const SubtypePred& p) {
  FunctorSpec r = f;
  r.name = f.name + "|" + p.name;
  r.enum_impl = [base = f, pred = p.pred](const FunctorSpec&, const Universes& us, int bound) {
    std::vector<Val> out;
    for (const Val& v : enumerate_vals(base, us, bound))
      if (pred(v)) out.push_back(v);
    return out;
  };
  r.shape_ok = [base = f.shape_ok, pred = p.pred](const Val& v) {
    return (!base || base(v)) && pred(v);
  };
  // Relator witnesses must themselves be members, so the search runs over the
  // restricted enumeration; a fast path inherited from the base container
  // knows nothing about the predicate, and only its refusals survive.
  r.witness_constrained = true;
  if (f.rel_fast) {
    r.rel_fast = [base = f.rel_fast](const FunctorSpec& spec, const AtomRels& rs, const Val& x,
                                     const Val& y) -> std::optional<bool> {
      std::optional<bool> b = base(spec, rs, x, y);
      if (b && !*b) return false;
      return std::nullopt;
    };
  }
  return r;
}

std::variant<FunctorSpec, Refusal> st_make(const FunctorSpec& f, const SubtypePred& p,
                                           const CheckConfig& cfg) {
  // Condition 1: the field is closed under the mapper.  Endofunction tuples
  // over a universe one atom larger than the default cover the collapses and
  // the two-point cases at once; renaming invariance of the predicate carries
  // the sweep to every other function at these sizes.
  {
    Universes us = token_universes(f.arity, cfg.universe + 1);
    std::vector<std::vector<AtomFn>> per_sort;
    for (const Universe& u : us) per_sort.push_back(all_fns(u, u, cfg.fn_enum_limit));
    std::vector<Val> field;
    for (const Val& v : enumerate_vals(f, us, cfg.size))
      if (p.pred(v)) field.push_back(v);
    std::vector<std::size_t> odo(per_sort.size(), 0);
    while (true) {
      AtomFns fns;
      for (std::size_t s = 0; s < per_sort.size(); ++s) fns.push_back(per_sort[s][odo[s]]);
      for (const Val& v : field)
        if (!p.pred(fmap(f, fns, v)))
          return Refusal{"subtype_condition_1", "the field is not closed under the mapper: x=" +
                                                    v.str() + " escapes under g=" + fns_str(fns)};
      std::size_t s = 0;
      while (s < odo.size() && ++odo[s] == per_sort[s].size()) odo[s++] = 0;
      if (s == odo.size()) break;
    }
  }
  // Condition 2: pair-atom values whose projections both lie in the field
  // must factor through a field member.  Candidates need setters inside the
  // value's own, so they are enumerated over exactly its atoms, no larger
  // than the value itself.
  {
    Universe base = Universe::tokens(cfg.universe);
    Universes pair_us;
    AtomFns fsts, snds;
    for (int i = 0; i < f.arity; ++i) {
      Universe pu = rel_universe(full_rel(base, base));
      fsts.push_back(fst_fn(pu));
      snds.push_back(snd_fn(pu));
      pair_us.push_back(std::move(pu));
    }
    for (const Val& z : enumerate_vals(f, pair_us, cfg.size)) {
      Val x = fmap(f, fsts, z);
      Val y = fmap(f, snds, z);
      if (!p.pred(x) || !p.pred(y)) continue;
      if (p.pred(z)) continue;  // z factors itself
      Universes zu;
      for (int i = 0; i < f.arity; ++i) {
        AtomSet s = set_at(f, i, z);
        zu.push_back(Universe(std::vector<Atom>(s.begin(), s.end())));
      }
      bool found = false;
      for (const Val& c : enumerate_vals(f, zu, fsize(f, z))) {
        if (!p.pred(c)) continue;
        if (fmap(f, fsts, c) == x && fmap(f, snds, c) == y) {
          found = true;
          break;
        }
      }
      if (!found)
        return Refusal{"subtype_condition_2",
                       "no field member factors the projections: z=" + z.str() +
                           ", map fst z=" + x.str() + ", map snd z=" + y.str()};
    }
  }
  return st_restrict(f, p);
}

std::variant<QuotientSpec, Refusal> st_partial_quotient(const FunctorSpec& f,
                                                        const SubtypePred& p, const EquivSpec& e,
                                                        const CheckConfig& cfg) {
  auto st = st_make(f, p, cfg);
  if (auto* ref = std::get_if<Refusal>(&st)) return *ref;
  auto q = q_make(std::get<FunctorSpec>(st), e, token_universes(f.arity, cfg.universe), cfg);
  if (auto* ref = std::get_if<Refusal>(&q))
    return Refusal{"quotient " + ref->check, ref->detail};
  return std::get<QuotientSpec>(q);
}

}  // namespace qbnf
