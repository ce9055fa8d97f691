#include "qbnf/value.hpp"

#include <sstream>

namespace qbnf {

const char* ct_name(Ct c) {
  switch (c) {
    case Ct::nil: return "nil";
    case Ct::cons: return "cons";
    case Ct::pr: return "pr";
    case Ct::inl: return "Inl";
    case Ct::inr: return "Inr";
    case Ct::none: return "None";
    case Ct::some: return "Some";
    case Ct::rzero: return "0";
    case Ct::reps: return "e";
    case Ct::ratom: return "atom";
    case Ct::ralt: return "alt";
    case Ct::rconc: return "conc";
    case Ct::rstar: return "star";
    case Ct::fin: return "fin";
    case Ct::inf: return "inf";
    case Ct::pre: return "pre";
    case Ct::cyc: return "cyc";
    case Ct::tll: return "tll";
    case Ct::slot: return "slot";
  }
  return "?";
}

Val Val::leaf(int sort, const Atom& a) {
  Val v;
  v.is_leaf = true;
  v.sort = static_cast<std::int16_t>(sort);
  v.atom = a;
  return v;
}

Val Val::node(Ct ct, std::vector<Val> kids, int aux) {
  Val v;
  v.ct = ct;
  v.aux = static_cast<std::int16_t>(aux);
  v.kids = std::move(kids);
  return v;
}

int cmp(const Val& x, const Val& y) {
  if (x.is_leaf != y.is_leaf) return x.is_leaf ? -1 : 1;
  if (x.is_leaf) {
    if (x.sort != y.sort) return x.sort < y.sort ? -1 : 1;
    if (x.atom != y.atom) return x.atom < y.atom ? -1 : 1;
    return 0;
  }
  if (x.ct != y.ct) return x.ct < y.ct ? -1 : 1;
  if (x.aux != y.aux) return x.aux < y.aux ? -1 : 1;
  if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (int c = cmp(x.kids[i], y.kids[i])) return c;
  return 0;
}

bool operator==(const Val& x, const Val& y) { return cmp(x, y) == 0; }
bool operator!=(const Val& x, const Val& y) { return cmp(x, y) != 0; }
bool operator<(const Val& x, const Val& y) { return cmp(x, y) < 0; }

std::size_t val_hash(const Val& x) {
  std::size_t h = x.is_leaf ? 0x9e3779b97f4a7c15ull : 0x517cc1b727220a95ull;
  if (x.is_leaf) {
    h = h * 31 + static_cast<std::size_t>(x.sort);
    h = h * 31 + x.atom.hash();
    return h;
  }
  h = h * 31 + static_cast<std::size_t>(x.ct);
  h = h * 31 + static_cast<std::size_t>(x.aux);
  for (const Val& k : x.kids) h = h * 31 + val_hash(k);
  return h;
}

namespace {

// Collect a right-nested cons chain into elements; returns false when the
// spine is not a plain list.
bool list_elems(const Val& v, std::vector<const Val*>& out) {
  const Val* cur = &v;
  while (!cur->is_leaf && cur->ct == Ct::cons && cur->kids.size() == 2) {
    out.push_back(&cur->kids[0]);
    cur = &cur->kids[1];
  }
  return !cur->is_leaf && cur->ct == Ct::nil;
}

void bracket_join(std::ostringstream& os, const std::vector<const Val*>& elems) {
  os << "[";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) os << ",";
    os << elems[i]->str();
  }
  os << "]";
}

int re_prec(const Val& v) {
  if (v.is_leaf) return 4;
  switch (v.ct) {
    case Ct::ralt: return 1;
    case Ct::rconc: return 2;
    case Ct::rstar: return 3;
    default: return 4;
  }
}

void re_print(std::ostringstream& os, const Val& v, int ctx) {
  int p = re_prec(v);
  bool paren = p < ctx;
  if (paren) os << "(";
  switch (v.ct) {
    case Ct::rzero: os << "0"; break;
    case Ct::reps: os << "e"; break;
    case Ct::ratom: os << v.kids[0].atom.str(v.kids[0].sort); break;
    case Ct::ralt:
      re_print(os, v.kids[0], 1);
      os << "|";
      re_print(os, v.kids[1], 1);
      break;
    case Ct::rconc:
      re_print(os, v.kids[0], 2);
      re_print(os, v.kids[1], 3);
      break;
    case Ct::rstar:
      re_print(os, v.kids[0], 4);
      os << "*";
      break;
    default: os << "?re"; break;
  }
  if (paren) os << ")";
}

bool is_regex_node(const Val& v) {
  if (v.is_leaf) return false;
  switch (v.ct) {
    case Ct::rzero:
    case Ct::reps:
    case Ct::ratom:
    case Ct::ralt:
    case Ct::rconc:
    case Ct::rstar: return true;
    default: return false;
  }
}

}  // namespace

std::string Val::str() const {
  std::ostringstream os;
  if (is_leaf) {
    os << atom.str(sort);
    return os.str();
  }
  if (ct == Ct::nil || ct == Ct::cons) {
    std::vector<const Val*> elems;
    if (list_elems(*this, elems)) {
      bracket_join(os, elems);
      return os.str();
    }
  }
  if (is_regex_node(*this)) {
    re_print(os, *this, 0);
    return os.str();
  }
  switch (ct) {
    case Ct::pr:
      os << "(" << kids[0].str() << "," << kids[1].str() << ")";
      return os.str();
    case Ct::inl:
    case Ct::inr:
    case Ct::some:
      os << ct_name(ct) << " " << kids[0].str();
      return os.str();
    case Ct::none:
      os << "None";
      return os.str();
    case Ct::fin:
    case Ct::pre:
    case Ct::cyc: {
      std::vector<const Val*> elems;
      for (const Val& k : kids) elems.push_back(&k);
      if (ct == Ct::cyc) os << "cyc";
      bracket_join(os, elems);
      return os.str();
    }
    case Ct::inf:
      if (!kids[0].kids.empty()) {
        os << kids[0].str() << "++";
      }
      os << kids[1].str();
      return os.str();
    case Ct::tll:
      os << "tll(" << kids[0].str() << "," << kids[1].str() << ")";
      return os.str();
    case Ct::slot:
      return kids[0].str();
    default: break;
  }
  os << ct_name(ct) << "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) os << ",";
    os << kids[i].str();
  }
  os << ")";
  return os.str();
}

int node_count(const Val& x) {
  if (x.is_leaf) return 0;
  // Terminators and bookkeeping nodes are free so that a list's size is its
  // length and a composition's size is the sum of its parts.
  int n = (x.ct == Ct::slot || x.ct == Ct::pre || x.ct == Ct::cyc || x.ct == Ct::nil) ? 0 : 1;
  for (const Val& k : x.kids) n += node_count(k);
  return n;
}

void for_each_leaf(const Val& x, const std::function<void(const Val&)>& f) {
  if (x.is_leaf) {
    f(x);
    return;
  }
  for (const Val& k : x.kids) for_each_leaf(k, f);
}

AtomSet leaf_atoms(const Val& x, int sort) {
  AtomSet out;
  for_each_leaf(x, [&](const Val& l) {
    if (l.sort == sort) out.insert(l.atom);
  });
  return out;
}

Val map_leaves(const Val& x, const AtomFns& fns) {
  if (x.is_leaf) {
    if (x.sort < 0 || static_cast<std::size_t>(x.sort) >= fns.size())
      throw malformed_value_error("leaf sort " + std::to_string(x.sort) +
                                  " outside the mapped arity");
    return Val::leaf(x.sort, fns[static_cast<std::size_t>(x.sort)](x.atom));
  }
  Val v;
  v.ct = x.ct;
  v.aux = x.aux;
  v.kids.reserve(x.kids.size());
  for (const Val& k : x.kids) v.kids.push_back(map_leaves(k, fns));
  return v;
}

bool leaves_in(const Val& x, const Universes& us) {
  bool ok = true;
  for_each_leaf(x, [&](const Val& l) {
    if (l.sort < 0 || static_cast<std::size_t>(l.sort) >= us.size() ||
        !us[static_cast<std::size_t>(l.sort)].contains(l.atom))
      ok = false;
  });
  return ok;
}

bool zip_vals(const Val& x, const Val& y, Val& out) {
  if (x.is_leaf != y.is_leaf) return false;
  if (x.is_leaf) {
    if (x.sort != y.sort) return false;
    out = Val::leaf(x.sort, Atom::pair(x.atom, y.atom));
    return true;
  }
  if (x.ct != y.ct || x.aux != y.aux || x.kids.size() != y.kids.size()) return false;
  Val v;
  v.ct = x.ct;
  v.aux = x.aux;
  v.kids.resize(x.kids.size());
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!zip_vals(x.kids[i], y.kids[i], v.kids[i])) return false;
  out = std::move(v);
  return true;
}

}  // namespace qbnf
