#include "qbnf/equiv.hpp"

#include <algorithm>
#include <set>

namespace qbnf {

EquivSpec equality_equiv() {
  EquivSpec e;
  e.name = "equality";
  e.decide = [](const Val& x, const Val& y) { return x == y; };
  e.neighbors = [](const Val&, const Universes&) { return std::vector<Val>{}; };
  return e;
}

ClassEnum class_enum(const EquivSpec& e, const FunctorSpec& f, const Val& x, const Universes& us,
                     const CheckConfig& cfg) {
  const int size_cap = fsize(f, x) + cfg.class_size_slack;
  std::set<Val> seen{x};
  std::vector<Val> frontier{x};
  bool pruned = false;
  for (int d = 0; d < cfg.class_depth && !frontier.empty(); ++d) {
    std::vector<Val> next;
    for (const Val& v : frontier) {
      for (Val& w : e.neighbors(v, us)) {
        if (fsize(f, w) > size_cap) {
          pruned = true;
          continue;
        }
        if (static_cast<long>(seen.size()) >= cfg.class_member_cap) {
          pruned = true;
          break;
        }
        if (seen.insert(w).second) next.push_back(std::move(w));
      }
      if (static_cast<long>(seen.size()) >= cfg.class_member_cap && pruned) break;
    }
    frontier = std::move(next);
  }
  ClassEnum out;
  out.members.assign(seen.begin(), seen.end());
  out.exhausted = frontier.empty() && !pruned;
  return out;
}

Val canonical_rep(const EquivSpec& e, const FunctorSpec& f, const Val& x, const Universes& us,
                  const CheckConfig& cfg) {
  if (e.normalize) return e.normalize(x);
  ClassEnum c = class_enum(e, f, x, us, cfg);
  const Val* best = &x;
  int best_size = fsize(f, x);
  for (const Val& m : c.members) {
    int s = fsize(f, m);
    if (s < best_size || (s == best_size && m < *best)) {
      best = &m;
      best_size = s;
    }
  }
  return *best;
}

}  // namespace qbnf
