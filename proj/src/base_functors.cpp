#include "qbnf/base_functors.hpp"

#include <algorithm>
#include <numeric>

namespace qbnf {

// --- list --------------------------------------------------------------

Val mk_list(const std::vector<Atom>& elems, int sort) {
  Val v = Val::node(Ct::nil);
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    v = Val::node(Ct::cons, {Val::leaf(sort, *it), std::move(v)});
  return v;
}

std::vector<Atom> list_elems_of(const Val& list) {
  std::vector<Atom> out;
  const Val* cur = &list;
  while (!cur->is_leaf && cur->ct == Ct::cons) {
    out.push_back(cur->kids[0].atom);
    cur = &cur->kids[1];
  }
  return out;
}

namespace {

bool list_shape(const Val& v) {
  const Val* cur = &v;
  while (true) {
    if (cur->is_leaf) return false;
    if (cur->ct == Ct::nil) return cur->kids.empty();
    if (cur->ct != Ct::cons || cur->kids.size() != 2 || !cur->kids[0].is_leaf) return false;
    cur = &cur->kids[1];
  }
}

std::vector<Val> enum_tuples_as_lists(const Universe& u, int bound) {
  std::vector<Val> out;
  std::vector<std::vector<Atom>> layer = {{}};
  out.push_back(mk_list({}));
  for (int len = 1; len <= bound; ++len) {
    std::vector<std::vector<Atom>> next;
    for (const auto& t : layer)
      for (const Atom& a : u.atoms) {
        std::vector<Atom> t2 = t;
        t2.push_back(a);
        out.push_back(mk_list(t2));
        next.push_back(std::move(t2));
      }
    layer = std::move(next);
    if (u.size() == 0) break;
  }
  return out;
}

}  // namespace

FunctorSpec list_functor() {
  FunctorSpec f;
  f.name = "list";
  f.arity = 1;
  f.shape_ok = list_shape;
  f.enum_impl = [](const FunctorSpec&, const Universes& us, int bound) {
    return enum_tuples_as_lists(us[0], bound);
  };
  return f;
}

// --- product / sums / option --------------------------------------------

namespace {

FunctorSpec unit_sized(const char* name, int arity, std::function<bool(const Val&)> shape,
                       std::function<std::vector<Val>(const Universes&)> all) {
  FunctorSpec f;
  f.name = name;
  f.arity = arity;
  f.shape_ok = std::move(shape);
  auto all_copy = std::move(all);
  f.enum_impl = [all_copy](const FunctorSpec&, const Universes& us, int bound) {
    if (bound < 1) return std::vector<Val>{};
    return all_copy(us);
  };
  f.size_impl = [](const Val&) { return 1; };
  return f;
}

bool leaf_of(const Val& v, int sort) { return v.is_leaf && v.sort == sort; }

}  // namespace

FunctorSpec product_functor() {
  return unit_sized(
      "product", 2,
      [](const Val& v) {
        return !v.is_leaf && v.ct == Ct::pr && v.kids.size() == 2 && leaf_of(v.kids[0], 0) &&
               leaf_of(v.kids[1], 1);
      },
      [](const Universes& us) {
        std::vector<Val> out;
        for (const Atom& a : us[0].atoms)
          for (const Atom& b : us[1].atoms)
            out.push_back(Val::node(Ct::pr, {Val::leaf(0, a), Val::leaf(1, b)}));
        return out;
      });
}

FunctorSpec pair_same_functor() {
  return unit_sized(
      "pair_same", 1,
      [](const Val& v) {
        return !v.is_leaf && v.ct == Ct::pr && v.kids.size() == 2 && leaf_of(v.kids[0], 0) &&
               leaf_of(v.kids[1], 0);
      },
      [](const Universes& us) {
        std::vector<Val> out;
        for (const Atom& a : us[0].atoms)
          for (const Atom& b : us[0].atoms)
            out.push_back(Val::node(Ct::pr, {Val::leaf(0, a), Val::leaf(0, b)}));
        return out;
      });
}

FunctorSpec sum_functor() {
  return unit_sized(
      "sum", 2,
      [](const Val& v) {
        if (v.is_leaf || v.kids.size() != 1) return false;
        if (v.ct == Ct::inl) return leaf_of(v.kids[0], 0);
        if (v.ct == Ct::inr) return leaf_of(v.kids[0], 1);
        return false;
      },
      [](const Universes& us) {
        std::vector<Val> out;
        for (const Atom& a : us[0].atoms) out.push_back(Val::node(Ct::inl, {Val::leaf(0, a)}));
        for (const Atom& b : us[1].atoms) out.push_back(Val::node(Ct::inr, {Val::leaf(1, b)}));
        return out;
      });
}

FunctorSpec sum_same_functor() {
  return unit_sized(
      "sum_same", 1,
      [](const Val& v) {
        if (v.is_leaf || v.kids.size() != 1) return false;
        return (v.ct == Ct::inl || v.ct == Ct::inr) && leaf_of(v.kids[0], 0);
      },
      [](const Universes& us) {
        std::vector<Val> out;
        for (const Atom& a : us[0].atoms) out.push_back(Val::node(Ct::inl, {Val::leaf(0, a)}));
        for (const Atom& a : us[0].atoms) out.push_back(Val::node(Ct::inr, {Val::leaf(0, a)}));
        return out;
      });
}

FunctorSpec option_functor() {
  return unit_sized(
      "option", 1,
      [](const Val& v) {
        if (v.is_leaf) return false;
        if (v.ct == Ct::none) return v.kids.empty();
        return v.ct == Ct::some && v.kids.size() == 1 && leaf_of(v.kids[0], 0);
      },
      [](const Universes& us) {
        std::vector<Val> out;
        out.push_back(Val::node(Ct::none));
        for (const Atom& a : us[0].atoms) out.push_back(Val::node(Ct::some, {Val::leaf(0, a)}));
        return out;
      });
}

// --- regex ----------------------------------------------------------------

Val re_zero() { return Val::node(Ct::rzero); }
Val re_eps() { return Val::node(Ct::reps); }
Val re_atom(const Atom& a) { return Val::node(Ct::ratom, {Val::leaf(0, a)}); }
Val re_alt(const Val& r, const Val& s) { return Val::node(Ct::ralt, {r, s}); }
Val re_conc(const Val& r, const Val& s) { return Val::node(Ct::rconc, {r, s}); }
Val re_star(const Val& r) { return Val::node(Ct::rstar, {r}); }

namespace {

bool regex_shape(const Val& v) {
  if (v.is_leaf) return false;
  switch (v.ct) {
    case Ct::rzero:
    case Ct::reps: return v.kids.empty();
    case Ct::ratom: return v.kids.size() == 1 && leaf_of(v.kids[0], 0);
    case Ct::ralt:
    case Ct::rconc:
      return v.kids.size() == 2 && regex_shape(v.kids[0]) && regex_shape(v.kids[1]);
    case Ct::rstar: return v.kids.size() == 1 && regex_shape(v.kids[0]);
    default: return false;
  }
}

}  // namespace

FunctorSpec regex_functor() {
  FunctorSpec f;
  f.name = "regex";
  f.arity = 1;
  f.shape_ok = regex_shape;
  f.enum_impl = [](const FunctorSpec&, const Universes& us, int bound) {
    // by_size[s] = all regexes of size exactly s (constructor-node count).
    std::vector<std::vector<Val>> by_size(static_cast<std::size_t>(bound) + 1);
    if (bound >= 1) {
      by_size[1].push_back(re_zero());
      by_size[1].push_back(re_eps());
      for (const Atom& a : us[0].atoms) by_size[1].push_back(re_atom(a));
    }
    for (int s = 2; s <= bound; ++s) {
      for (const Val& r : by_size[static_cast<std::size_t>(s - 1)])
        by_size[static_cast<std::size_t>(s)].push_back(re_star(r));
      for (int i = 1; i <= s - 2; ++i)
        for (const Val& r : by_size[static_cast<std::size_t>(i)])
          for (const Val& t : by_size[static_cast<std::size_t>(s - 1 - i)]) {
            by_size[static_cast<std::size_t>(s)].push_back(re_alt(r, t));
            by_size[static_cast<std::size_t>(s)].push_back(re_conc(r, t));
          }
    }
    std::vector<Val> out;
    for (const auto& layer : by_size) out.insert(out.end(), layer.begin(), layer.end());
    return out;
  };
  return f;
}

// --- eventually periodic sequences -----------------------------------------

Val mk_fin(const std::vector<Atom>& elems) {
  std::vector<Val> kids;
  for (const Atom& a : elems) kids.push_back(Val::leaf(0, a));
  return Val::node(Ct::fin, std::move(kids));
}

Val mk_stream(const std::vector<Atom>& prefix, const std::vector<Atom>& cycle) {
  std::vector<Val> pk, ck;
  for (const Atom& a : prefix) pk.push_back(Val::leaf(0, a));
  for (const Atom& a : cycle) ck.push_back(Val::leaf(0, a));
  return Val::node(Ct::inf, {Val::node(Ct::pre, std::move(pk)), Val::node(Ct::cyc, std::move(ck))});
}

Val mk_tll(const Val& stream, const Atom& terminator) {
  return Val::node(Ct::tll, {stream, Val::leaf(1, terminator)});
}

bool stream_is_infinite(const Val& stream) { return stream.ct == Ct::inf; }

int stream_prefix_len(const Val& stream) {
  if (stream.ct == Ct::fin) return static_cast<int>(stream.kids.size());
  return static_cast<int>(stream.kids[0].kids.size());
}

int stream_cycle_len(const Val& stream) {
  if (stream.ct == Ct::fin) return 0;
  return static_cast<int>(stream.kids[1].kids.size());
}

Atom stream_at(const Val& stream, int k) {
  if (stream.ct == Ct::fin) {
    if (k < 0 || k >= static_cast<int>(stream.kids.size()))
      throw malformed_value_error("finite sequence has no position " + std::to_string(k));
    return stream.kids[static_cast<std::size_t>(k)].atom;
  }
  int p = stream_prefix_len(stream);
  if (k < p) return stream.kids[0].kids[static_cast<std::size_t>(k)].atom;
  int l = stream_cycle_len(stream);
  return stream.kids[1].kids[static_cast<std::size_t>((k - p) % l)].atom;
}

Val up_canonical(const Val& stream) {
  if (stream.ct == Ct::fin) return stream;
  std::vector<Atom> prefix, cycle;
  for (const Val& v : stream.kids[0].kids) prefix.push_back(v.atom);
  for (const Val& v : stream.kids[1].kids) cycle.push_back(v.atom);
  // primitive root
  std::size_t n = cycle.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (cycle[i] != cycle[i % d]) ok = false;
    if (ok) {
      cycle.resize(d);
      break;
    }
  }
  // fold the prefix tail into the cycle
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
  }
  return mk_stream(prefix, cycle);
}

bool up_is_canonical(const Val& stream) { return up_canonical(stream) == stream; }

namespace {

bool block_of_leaves(const Val& v, Ct ct, int sort) {
  if (v.is_leaf || v.ct != ct) return false;
  for (const Val& k : v.kids)
    if (!leaf_of(k, sort)) return false;
  return true;
}

bool stream_shape(const Val& v) {
  if (v.is_leaf) return false;
  if (v.ct == Ct::fin) return block_of_leaves(v, Ct::fin, 0);
  if (v.ct != Ct::inf || v.kids.size() != 2) return false;
  return block_of_leaves(v.kids[0], Ct::pre, 0) && block_of_leaves(v.kids[1], Ct::cyc, 0) &&
         !v.kids[1].kids.empty();
}

int stream_size(const Val& stream) { return stream_prefix_len(stream) + stream_cycle_len(stream); }

Val map_stream(const Val& stream, const AtomFns& fns) {
  return up_canonical(map_leaves(stream, fns));
}

// All canonical streams with prefix+cycle <= bound.
std::vector<Val> enum_streams(const Universe& u, int bound) {
  std::vector<Val> out;
  std::vector<std::vector<std::vector<Atom>>> all(static_cast<std::size_t>(bound) + 1);
  all[0] = {{}};
  for (int len = 1; len <= bound; ++len) {
    for (const auto& t : all[static_cast<std::size_t>(len - 1)])
      for (const Atom& a : u.atoms) {
        auto t2 = t;
        t2.push_back(a);
        all[static_cast<std::size_t>(len)].push_back(std::move(t2));
      }
  }
  for (int pl = 0; pl < bound; ++pl)
    for (int cl = 1; pl + cl <= bound; ++cl)
      for (const auto& p : all[static_cast<std::size_t>(pl)])
        for (const auto& c : all[static_cast<std::size_t>(cl)]) {
          Val s = mk_stream(p, c);
          if (up_is_canonical(s)) out.push_back(std::move(s));
        }
  return out;
}

// Pointwise relatedness of two sequences, the exact relator for the models:
// a pair-sequence witness exists iff the sequences line up pointwise.
bool seq_pointwise(const AtomRel& r, const Val& sx, const Val& sy) {
  bool ix = stream_is_infinite(sx), iy = stream_is_infinite(sy);
  if (ix != iy) return false;
  if (!ix) {
    if (sx.kids.size() != sy.kids.size()) return false;
    for (std::size_t k = 0; k < sx.kids.size(); ++k)
      if (!r.contains(sx.kids[k].atom, sy.kids[k].atom)) return false;
    return true;
  }
  int n = std::max(stream_prefix_len(sx), stream_prefix_len(sy));
  int l = std::lcm(stream_cycle_len(sx), stream_cycle_len(sy));
  for (int k = 0; k < n + l; ++k)
    if (!r.contains(stream_at(sx, k), stream_at(sy, k))) return false;
  return true;
}

// The sequence analogue of the leaf zip: pair the sequences pointwise.  Two
// infinite streams pair up over max-prefix plus lcm-of-cycles positions.
std::optional<Val> zip_stream(const Val& sx, const Val& sy) {
  bool ix = stream_is_infinite(sx), iy = stream_is_infinite(sy);
  if (ix != iy) return std::nullopt;
  if (!ix) {
    if (sx.kids.size() != sy.kids.size()) return std::nullopt;
    std::vector<Atom> elems;
    for (std::size_t k = 0; k < sx.kids.size(); ++k)
      elems.push_back(Atom::pair(sx.kids[k].atom, sy.kids[k].atom));
    return mk_fin(elems);
  }
  int n = std::max(stream_prefix_len(sx), stream_prefix_len(sy));
  int l = std::lcm(stream_cycle_len(sx), stream_cycle_len(sy));
  std::vector<Atom> prefix, cycle;
  for (int k = 0; k < n; ++k) prefix.push_back(Atom::pair(stream_at(sx, k), stream_at(sy, k)));
  for (int k = n; k < n + l; ++k) cycle.push_back(Atom::pair(stream_at(sx, k), stream_at(sy, k)));
  return up_canonical(mk_stream(prefix, cycle));
}

}  // namespace

FunctorSpec tllist_functor() {
  FunctorSpec f;
  f.name = "tllist";
  f.arity = 2;
  f.structural_map = false;
  f.shape_ok = [](const Val& v) {
    return !v.is_leaf && v.ct == Ct::tll && v.kids.size() == 2 && stream_shape(v.kids[0]) &&
           up_is_canonical(v.kids[0]) && leaf_of(v.kids[1], 1);
  };
  f.map_impl = [](const FunctorSpec&, const AtomFns& fns, const Val& x) {
    return Val::node(Ct::tll, {map_stream(x.kids[0], fns), map_leaves(x.kids[1], fns)});
  };
  f.size_impl = [](const Val& v) { return stream_size(v.kids[0]); };
  f.enum_impl = [](const FunctorSpec&, const Universes& us, int bound) {
    std::vector<Val> out;
    std::vector<Val> streams;
    {
      std::vector<std::vector<Atom>> layer = {{}};
      streams.push_back(mk_fin({}));
      for (int len = 1; len <= bound; ++len) {
        std::vector<std::vector<Atom>> next;
        for (const auto& t : layer)
          for (const Atom& a : us[0].atoms) {
            auto t2 = t;
            t2.push_back(a);
            streams.push_back(mk_fin(t2));
            next.push_back(std::move(t2));
          }
        layer = std::move(next);
        if (us[0].size() == 0) break;
      }
      for (Val& s : enum_streams(us[0], bound)) streams.push_back(std::move(s));
    }
    for (const Val& s : streams)
      for (const Atom& t : us[1].atoms) out.push_back(mk_tll(s, t));
    return out;
  };
  f.rel_fast = [](const FunctorSpec&, const AtomRels& rs, const Val& x, const Val& y) {
    bool seq = seq_pointwise(rs[0], x.kids[0], y.kids[0]);
    return std::optional<bool>(seq && rs[1].contains(x.kids[1].atom, y.kids[1].atom));
  };
  f.witness_impl = [](const FunctorSpec&, const Val& x, const Val& y) -> std::optional<Val> {
    auto s = zip_stream(x.kids[0], y.kids[0]);
    if (!s) return std::nullopt;
    return mk_tll(*s, Atom::pair(x.kids[1].atom, y.kids[1].atom));
  };
  return f;
}

FunctorSpec upstream_functor() {
  FunctorSpec f;
  f.name = "upstream";
  f.arity = 1;
  f.structural_map = false;
  f.shape_ok = [](const Val& v) {
    return stream_shape(v) && v.ct == Ct::inf && up_is_canonical(v);
  };
  f.map_impl = [](const FunctorSpec&, const AtomFns& fns, const Val& x) {
    return map_stream(x, fns);
  };
  f.size_impl = [](const Val& v) { return stream_size(v); };
  f.enum_impl = [](const FunctorSpec&, const Universes& us, int bound) {
    return enum_streams(us[0], bound);
  };
  f.rel_fast = [](const FunctorSpec&, const AtomRels& rs, const Val& x, const Val& y) {
    return std::optional<bool>(seq_pointwise(rs[0], x, y));
  };
  f.witness_impl = [](const FunctorSpec&, const Val& x, const Val& y) {
    return zip_stream(x, y);
  };
  return f;
}

}  // namespace qbnf
