#include "fsmkit/universes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fsmkit {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64 bits");
  return r;
}
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64 bits");
  return r;
}
std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

}  // namespace

bool member(const Element& x, const SetExpr& e) {
  switch (e.kind()) {
    case SetKind::Atoms: return x.kind() == Kind::Atom && x.as<el::AtomV>().a != kHole;
    case SetKind::Naturals: return x.kind() == Kind::Nat;
    case SetKind::Prod:
      return x.kind() == Kind::Pair && member(x.as<el::Pair>().first, e.kid(0)) &&
             member(x.as<el::Pair>().second, e.kid(1));
    case SetKind::Sum:
      if (x.kind() == Kind::InL) return member(x.as<el::InL>().v, e.kid(0));
      if (x.kind() == Kind::InR) return member(x.as<el::InR>().v, e.kid(1));
      return false;
    case SetKind::FinPow:
    case SetKind::NSized: {
      if (x.kind() != Kind::FinSet) return false;
      const auto& m = x.as<el::FinSet>().members;
      if (e.kind() == SetKind::NSized && m.size() != e.n()) return false;
      return std::all_of(m.begin(), m.end(), [&](const Element& y) { return member(y, e.kid(0)); });
    }
    case SetKind::CofinPow: return x.kind() == Kind::Cofin;
    case SetKind::FsPow: {
      const SetExpr& base = e.kid(0);
      switch (x.kind()) {
        case Kind::FinSet: {
          if (base.kind() == SetKind::Naturals || base.kind() == SetKind::Sum) return false;
          const auto& m = x.as<el::FinSet>().members;
          return std::all_of(m.begin(), m.end(), [&](const Element& y) { return member(y, base); });
        }
        case Kind::Cofin: return base.kind() == SetKind::Atoms;
        case Kind::NatSet: return base.kind() == SetKind::Naturals;
        case Kind::SumSet:
          return base.kind() == SetKind::Sum && member(x.as<el::SumSet>().left, u::fs_pow(base.kid(0))) &&
                 member(x.as<el::SumSet>().right, u::fs_pow(base.kid(1)));
        case Kind::Universe: return subset_of(x.as<el::Universe>().expr, base);
        default: return false;
      }
    }
    case SetKind::Fn: {
      const SetExpr& dom = e.kid(0);
      const SetExpr& cod = e.kid(1);
      if (dom.kind() == SetKind::Atoms && x.kind() == Kind::AtomFn) {
        const auto& fn = x.as<el::AtomFn>();
        for (const auto& kv : fn.exceptions)
          if (!member(kv.second, cod)) return false;
        AtomSet used = support(x);
        for (const auto& kv : fn.exceptions) used.insert(kv.first);
        return member(instantiate(fn.tail, fresh_atom(used)), cod);
      }
      if (dom.kind() == SetKind::Naturals && cod.kind() == SetKind::Atoms) return x.kind() == Kind::AtomSeq;
      return false;
    }
    case SetKind::InjTuples: {
      if (x.kind() != Kind::InjTuple) return false;
      const auto& m = x.as<el::Seq>().entries;
      if (e.n() && m.empty()) return false;
      return std::all_of(m.begin(), m.end(), [&](const Element& y) { return member(y, e.kid(0)); });
    }
    case SetKind::Tuples: {
      if (x.kind() != Kind::InjTuple && x.kind() != Kind::Tuple) return false;
      const auto& m = x.as<el::Seq>().entries;
      return std::all_of(m.begin(), m.end(), [&](const Element& y) { return member(y, e.kid(0)); });
    }
  }
  return false;
}

FinOrCofinAtomSet setop(SetOp op, const FinOrCofinAtomSet& u, const FinOrCofinAtomSet& v) {
  auto inter = [](const AtomSet& a, const AtomSet& b) {
    AtomSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
  };
  auto uni = [](AtomSet a, const AtomSet& b) {
    a.insert(b.begin(), b.end());
    return a;
  };
  auto minus = [](const AtomSet& a, const AtomSet& b) {
    AtomSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
  };
  switch (op) {
    case SetOp::Complement: return {!u.cofinite, u.carrier};
    case SetOp::Union:
      if (!u.cofinite && !v.cofinite) return {false, uni(u.carrier, v.carrier)};
      if (u.cofinite && v.cofinite) return {true, inter(u.carrier, v.carrier)};
      if (u.cofinite) return {true, minus(u.carrier, v.carrier)};
      return {true, minus(v.carrier, u.carrier)};
    case SetOp::Intersect:
      if (!u.cofinite && !v.cofinite) return {false, inter(u.carrier, v.carrier)};
      if (u.cofinite && v.cofinite) return {true, uni(u.carrier, v.carrier)};
      if (u.cofinite) return {false, minus(v.carrier, u.carrier)};
      return {false, minus(u.carrier, v.carrier)};
  }
  return u;
}

Element to_element(const FinOrCofinAtomSet& s) { return s.cofinite ? cofin(s.carrier) : atom_set(s.carrier); }

FinOrCofinAtomSet to_fin_or_cofin(const Element& x) {
  if (x.kind() == Kind::Cofin) {
    const auto& c = x.as<el::Cofin>().complement;
    return {true, AtomSet(c.begin(), c.end())};
  }
  FinOrCofinAtomSet out;
  for (const auto& m : x.as<el::FinSet>().members) {
    if (m.kind() != Kind::Atom) throw std::invalid_argument("not a set of atoms: " + to_string(x));
    out.carrier.insert(m.as<el::AtomV>().a);
  }
  return out;
}

Element to_element(const ClassifiedAtomFn& f) {
  std::vector<std::pair<Atom, Element>> ex;
  for (auto [k, v] : f.exceptions) ex.emplace_back(k, mk_atom(v));
  return atom_fn(std::move(ex), mk_atom(f.constant.value_or(kHole)));
}

ClassifiedAtomFn classify_atom_fn(const Element& f) {
  const auto& fn = f.as<el::AtomFn>();
  if (fn.tail.kind() != Kind::Atom) throw std::invalid_argument("not a function A -> A: " + to_string(f));
  ClassifiedAtomFn out;
  Atom t = fn.tail.as<el::AtomV>().a;
  if (t != kHole) out.constant = t;
  for (const auto& [k, v] : fn.exceptions) {
    if (v.kind() != Kind::Atom) throw std::invalid_argument("not a function A -> A: " + to_string(f));
    out.exceptions[k] = v.as<el::AtomV>().a;
  }
  return out;
}

Atom apply_atom_fn(const ClassifiedAtomFn& f, Atom a) {
  auto it = f.exceptions.find(a);
  if (it != f.exceptions.end()) return it->second;
  return f.constant.value_or(a);
}

AtomSet atom_fn_support(const ClassifiedAtomFn& f) { return support(to_element(f)); }

namespace {

struct Enumerator {
  const SliceOptions& opts;
  SliceStatus status = SliceStatus::Complete;

  void truncated() {
    if (status == SliceStatus::Complete) status = SliceStatus::Truncated;
  }
  bool over() const { return status == SliceStatus::OverBudget; }
  bool fits(std::size_t n) {
    if (n > opts.budget) {
      status = SliceStatus::OverBudget;
      return false;
    }
    return true;
  }

  static std::vector<Element> canon(std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  // All subsets of xs, optionally restricted to a given size.
  std::vector<std::vector<Element>> subsets(const std::vector<Element>& xs, std::optional<std::size_t> size) {
    std::vector<std::vector<Element>> out;
    if (!size && (xs.size() >= 40 || !fits(std::size_t{1} << xs.size()))) {
      status = SliceStatus::OverBudget;
      return out;
    }
    std::vector<Element> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (over()) return;
      if (size && cur.size() == *size) {
        out.push_back(cur);
        if (!fits(out.size())) return;
        return;
      }
      if (i == xs.size()) {
        if (!size) out.push_back(cur);
        return;
      }
      if (size && cur.size() + (xs.size() - i) < *size) return;
      self(self, i + 1);
      cur.push_back(xs[i]);
      self(self, i + 1);
      cur.pop_back();
    };
    rec(rec, 0);
    return out;
  }

  std::vector<Element> injective_sequences(const std::vector<Element>& xs, bool nonempty) {
    std::vector<Element> out;
    std::vector<Element> cur;
    std::vector<bool> used(xs.size(), false);
    auto rec = [&](auto&& self) -> void {
      if (over()) return;
      if (!nonempty || !cur.empty()) {
        out.push_back(tuple(cur));
        if (!fits(out.size())) return;
      }
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(xs[i]);
        self(self);
        cur.pop_back();
        used[i] = false;
      }
    };
    rec(rec);
    return out;
  }

  std::vector<Element> run(const SetExpr& e, const AtomSet& S) {
    if (over()) return {};
    switch (e.kind()) {
      case SetKind::Atoms: {
        std::vector<Element> out;
        for (Atom a : S) out.push_back(mk_atom(a));
        return out;
      }
      case SetKind::Naturals: {
        truncated();
        std::vector<Element> out;
        for (std::uint64_t n = 0; n < opts.nat_bound; ++n) out.push_back(nat(n));
        return out;
      }
      case SetKind::Prod: {
        auto a = run(e.kid(0), S);
        auto b = run(e.kid(1), S);
        if (over() || !fits(a.size() * b.size())) return {};
        std::vector<Element> out;
        for (const auto& x : a)
          for (const auto& y : b) out.push_back(pair(x, y));
        return out;
      }
      case SetKind::Sum: {
        std::vector<Element> out;
        for (const auto& x : run(e.kid(0), S)) out.push_back(inl(x));
        for (const auto& y : run(e.kid(1), S)) out.push_back(inr(y));
        return out;
      }
      case SetKind::FinPow:
      case SetKind::NSized: {
        auto base = run(e.kid(0), S);
        std::optional<std::size_t> size;
        if (e.kind() == SetKind::NSized) size = e.n();
        std::vector<Element> out;
        for (auto& s : subsets(base, size)) out.push_back(finset(std::move(s)));
        return out;
      }
      case SetKind::CofinPow: {
        std::vector<Element> atoms;
        for (Atom a : S) atoms.push_back(mk_atom(a));
        std::vector<Element> out;
        for (auto& s : subsets(atoms, std::nullopt)) {
          AtomSet c;
          for (const auto& x : s) c.insert(x.as<el::AtomV>().a);
          out.push_back(cofin(c));
        }
        return out;
      }
      case SetKind::FsPow: return fs_pow(e.kid(0), S);
      case SetKind::Fn: return functions(e.kid(0), e.kid(1), S);
      case SetKind::InjTuples: return injective_sequences(run(e.kid(0), S), e.n() != 0);
      case SetKind::Tuples: {
        auto base = run(e.kid(0), S);
        std::vector<Element> out{tuple({})};
        if (base.empty()) return out;
        truncated();
        std::vector<std::vector<Element>> layer{{}};
        for (std::uint64_t len = 1; len < opts.nat_bound && !over(); ++len) {
          std::vector<std::vector<Element>> next;
          for (const auto& t : layer)
            for (const auto& b : base) {
              next.push_back(t);
              next.back().push_back(b);
            }
          for (const auto& t : next) out.push_back(tuple(t));
          if (!fits(out.size())) return {};
          layer = std::move(next);
        }
        return out;
      }
    }
    return {};
  }

  std::vector<Element> fs_pow(const SetExpr& base, const AtomSet& S) {
    std::vector<Element> out;
    switch (base.kind()) {
      case SetKind::Atoms: {
        std::vector<Element> atoms;
        for (Atom a : S) atoms.push_back(mk_atom(a));
        for (auto& s : subsets(atoms, std::nullopt)) {
          AtomSet c;
          for (const auto& x : s) c.insert(x.as<el::AtomV>().a);
          out.push_back(atom_set(c));
          out.push_back(cofin(c));
        }
        return out;
      }
      case SetKind::Naturals: {
        truncated();
        std::uint64_t n = opts.nat_bound;
        if (n >= 40 || !fits(std::size_t{2} << n)) {
          status = SliceStatus::OverBudget;
          return {};
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
          std::vector<bool> bits(n);
          for (std::uint64_t i = 0; i < n; ++i) bits[i] = (mask >> i) & 1;
          out.push_back(nat_set(bits, {false}));
          out.push_back(nat_set(bits, {true}));
        }
        return out;
      }
      case SetKind::Sum: {
        auto l = fs_pow(base.kid(0), S);
        auto r = fs_pow(base.kid(1), S);
        if (over() || !fits(l.size() * r.size())) return {};
        for (const auto& x : l)
          for (const auto& y : r) out.push_back(sum_set(x, y));
        return out;
      }
      default:
        break;
    }
    if (orbit_finite(base))
      throw Unsupported("subsets of " + to_string(base) + " have no finite representation");
    truncated();
    for (auto& s : subsets(run(base, S), std::nullopt)) out.push_back(finset(std::move(s)));
    return out;
  }

  std::vector<Element> functions(const SetExpr& dom, const SetExpr& cod, const AtomSet& S) {
    std::vector<Element> out;
    if (dom.kind() == SetKind::Atoms) {
      if (cod.kind() == SetKind::Fn) throw Unsupported("nested function spaces are not represented");
      auto vals = run(cod, S);
      AtomSet S1 = S;
      S1.insert(kHole);
      auto tails = run(cod, S1);
      std::vector<Atom> keys(S.begin(), S.end());
      std::size_t total = tails.size();
      for (std::size_t i = 0; i < keys.size(); ++i) total *= vals.size();
      if (over() || !fits(total)) return {};
      std::vector<std::size_t> idx(keys.size(), 0);
      for (const auto& t : tails) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
          std::vector<std::pair<Atom, Element>> ex;
          for (std::size_t i = 0; i < keys.size(); ++i) ex.emplace_back(keys[i], vals[idx[i]]);
          out.push_back(atom_fn(std::move(ex), t));
          std::size_t i = 0;
          while (i < keys.size() && ++idx[i] == vals.size()) idx[i++] = 0;
          if (i == keys.size()) break;
        }
      }
      return out;
    }
    if (dom.kind() == SetKind::Naturals && cod.kind() == SetKind::Atoms) {
      std::vector<Atom> atoms(S.begin(), S.end());
      if (atoms.empty()) return out;
      if (atoms.size() == 1) return {atom_seq({}, {atoms[0]})};
      truncated();
      std::set<Element> seen;
      for (std::uint64_t total = 1; total <= opts.nat_bound; ++total) {
        for (std::uint64_t cyc = 1; cyc <= total; ++cyc) {
          std::uint64_t len = total;
          std::vector<std::size_t> idx(len, 0);
          for (;;) {
            std::vector<Atom> p, c;
            for (std::uint64_t i = 0; i < len; ++i) (i < len - cyc ? p : c).push_back(atoms[idx[i]]);
            seen.insert(atom_seq(p, c));
            if (!fits(seen.size())) return {};
            std::size_t i = 0;
            while (i < len && ++idx[i] == atoms.size()) idx[i++] = 0;
            if (i == len) break;
          }
        }
      }
      return {seen.begin(), seen.end()};
    }
    throw Unsupported("function space " + to_string(u::fn(dom, cod)) + " is not enumerable");
  }
};

bool order_stable(const Element& x) {
  switch (x.kind()) {
    case Kind::FinSet:
    case Kind::Cofin:
    case Kind::AtomFn:
    case Kind::FinMap:
    case Kind::SumSet: return support(x).size() <= 1;
    case Kind::Pair: return order_stable(x.as<el::Pair>().first) && order_stable(x.as<el::Pair>().second);
    case Kind::InL: return order_stable(x.as<el::InL>().v);
    case Kind::InR: return order_stable(x.as<el::InR>().v);
    case Kind::InjTuple:
    case Kind::Tuple:
      for (const auto& m : x.as<el::Seq>().entries)
        if (!order_stable(m)) return false;
      return true;
    default: return true;
  }
}

void first_occurrence(const Element& x, std::vector<Atom>& out) {
  auto note = [&](Atom a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  switch (x.kind()) {
    case Kind::Atom: note(x.as<el::AtomV>().a); return;
    case Kind::Pair:
      first_occurrence(x.as<el::Pair>().first, out);
      first_occurrence(x.as<el::Pair>().second, out);
      return;
    case Kind::InL: first_occurrence(x.as<el::InL>().v, out); return;
    case Kind::InR: first_occurrence(x.as<el::InR>().v, out); return;
    case Kind::InjTuple:
    case Kind::Tuple:
      for (const auto& m : x.as<el::Seq>().entries) first_occurrence(m, out);
      return;
    case Kind::AtomSeq:
      for (Atom a : x.as<el::AtomSeq>().prefix) note(a);
      for (Atom a : x.as<el::AtomSeq>().cycle) note(a);
      return;
    default:
      for (Atom a : support(x)) note(a);
      return;
  }
}

}  // namespace

Slice enumerate_slice(const SetExpr& e, const AtomSet& S, const SliceOptions& opts) {
  Enumerator en{opts};
  auto xs = en.run(e, S);
  Slice out;
  out.status = en.status;
  if (out.status != SliceStatus::OverBudget) out.elements = Enumerator::canon(std::move(xs));
  return out;
}

std::variant<std::vector<Element>, InfiniteMarker> enumerate_supported(const SetExpr& e, const AtomSet& S) {
  auto n = count_supported(e, S);
  if (!n) return InfiniteMarker{};
  Slice s = enumerate_slice(e, S);
  // a truncated slice is still complete when the count says nothing is missing
  if (s.status != SliceStatus::Complete && s.elements.size() != *n) throw std::runtime_error("slice of " + to_string(e) + " is too large");
  return std::move(s.elements);
}

Element orbit_canon(const Element& x, const AtomSet& F) {
  std::vector<Atom> moved;
  for (Atom a : support(x))
    if (F.count(a)) moved.push_back(a);
  if (moved.empty()) return x;
  std::vector<Atom> target(F.begin(), F.end());
  target.resize(moved.size());
  if (order_stable(x)) {
    std::vector<Atom> order;
    first_occurrence(x, order);
    std::map<Atom, Atom> m;
    std::size_t k = 0;
    for (Atom a : order)
      if (F.count(a)) m[a] = target[k++];
    return map_atoms(x, [&m](Atom a) {
      auto it = m.find(a);
      return it == m.end() ? a : it->second;
    });
  }
  std::optional<Element> best;
  std::vector<Atom> img = target;
  do {
    std::map<Atom, Atom> m;
    for (std::size_t i = 0; i < moved.size(); ++i) m[moved[i]] = img[i];
    Element y = map_atoms(x, [&m](Atom a) {
      auto it = m.find(a);
      return it == m.end() ? a : it->second;
    });
    if (!best || y < *best) best = y;
  } while (std::next_permutation(img.begin(), img.end()));
  return *best;
}

std::vector<FinPermutation> local_symmetries(const Element& x, const AtomSet& F) {
  std::vector<FinPermutation> out;
  if (order_stable(x)) return out;
  std::vector<Atom> moved;
  for (Atom a : support(x))
    if (F.count(a)) moved.push_back(a);
  std::vector<Atom> img = moved;
  while (std::next_permutation(img.begin(), img.end())) {
    std::map<Atom, Atom> m;
    for (std::size_t i = 0; i < moved.size(); ++i) m[moved[i]] = img[i];
    auto pi = FinPermutation::from_map(m);
    if (act(pi, x) == x) out.push_back(pi);
  }
  return out;
}

std::uint64_t local_stabilizer(const Element& x, const AtomSet& F) { return local_symmetries(x, F).size() + 1; }

std::optional<FinPermutation> orbit_transport(const Element& from, const Element& to, const AtomSet& F) {
  std::vector<Atom> src, dst;
  for (Atom a : support(from))
    if (F.count(a)) src.push_back(a);
  for (Atom a : support(to))
    if (F.count(a)) dst.push_back(a);
  if (src.size() != dst.size()) return std::nullopt;
  auto attempt = [&](const std::vector<Atom>& img) -> std::optional<FinPermutation> {
    std::map<Atom, Atom> m;
    for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = img[i];
    auto pi = extend_to_permutation(m);
    if (act(pi, from) == to) return pi;
    return std::nullopt;
  };
  if (order_stable(from)) {
    std::vector<Atom> a, b;
    first_occurrence(from, a);
    first_occurrence(to, b);
    if (a.size() != b.size()) return std::nullopt;
    std::map<Atom, Atom> m;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (F.count(a[i])) {
        if (!F.count(b[i])) return std::nullopt;
        m[a[i]] = b[i];
      }
    if (m.size() != src.size()) return std::nullopt;
    auto pi = extend_to_permutation(m);
    if (act(pi, from) == to) return pi;
    return std::nullopt;
  }
  std::vector<Atom> img = dst;
  do
    if (auto pi = attempt(img)) return pi;
  while (std::next_permutation(img.begin(), img.end()));
  return std::nullopt;
}

std::uint64_t count_orbits(const SetExpr& e, const AtomSet& S) {
  if (!orbit_finite(e)) throw std::invalid_argument(to_string(e) + " is not orbit-finite");
  auto F = fresh_atoms(S, *arity(e));
  AtomSet pool = S;
  AtomSet Fs(F.begin(), F.end());
  pool.insert(F.begin(), F.end());
  Slice s = enumerate_slice(e, pool);
  if (s.status != SliceStatus::Complete) throw std::runtime_error("orbit enumeration exceeded budget");
  std::set<Element> reps;
  for (const auto& x : s.elements) reps.insert(orbit_canon(x, Fs));
  return reps.size();
}

std::optional<std::uint64_t> count_supported(const SetExpr& e, const AtomSet& S) {
  using R = std::optional<std::uint64_t>;
  auto is_zero = [](const R& r) { return r && *r == 0; };
  switch (e.kind()) {
    case SetKind::Atoms: return S.size();
    case SetKind::Naturals: return std::nullopt;
    case SetKind::Prod: {
      R a = count_supported(e.kid(0), S), b = count_supported(e.kid(1), S);
      if (is_zero(a) || is_zero(b)) return 0;
      if (!a || !b) return std::nullopt;
      return checked_mul(*a, *b);
    }
    case SetKind::Sum: {
      R a = count_supported(e.kid(0), S), b = count_supported(e.kid(1), S);
      if (!a || !b) return std::nullopt;
      return checked_add(*a, *b);
    }
    case SetKind::FinPow: {
      R c = count_supported(e.kid(0), S);
      if (!c) return std::nullopt;
      return checked_pow(2, *c);
    }
    case SetKind::NSized: {
      R c = count_supported(e.kid(0), S);
      if (!c) return e.n() == 0 ? R(1) : std::nullopt;
      std::uint64_t n = e.n();
      if (n > *c) return 0;
      std::uint64_t r = 1;
      for (std::uint64_t i = 1; i <= n; ++i) r = checked_mul(r, *c - n + i) / i;
      return r;
    }
    case SetKind::CofinPow: return checked_pow(2, S.size());
    case SetKind::FsPow:
      if (!orbit_finite(e.kid(0))) return std::nullopt;
      return checked_pow(2, count_orbits(e.kid(0), S));
    case SetKind::Fn: {
      const SetExpr& dom = e.kid(0);
      R c = count_supported(e.kid(1), S);
      if (dom.kind() == SetKind::Atoms) {
        AtomSet S1 = S;
        S1.insert(fresh_atom(S));
        R c1 = count_supported(e.kid(1), S1);
        if (is_zero(c1) || (!S.empty() && is_zero(c))) return 0;
        if (!c1 || (!S.empty() && !c)) return std::nullopt;
        return checked_mul(checked_pow(S.empty() ? 1 : *c, S.size()), *c1);
      }
      if (dom.kind() == SetKind::Naturals) {
        if (is_zero(c)) return 0;
        if (c && *c == 1) return 1;
        return std::nullopt;
      }
      throw Unsupported("no closed form for " + to_string(e));
    }
    case SetKind::InjTuples: {
      R c = count_supported(e.kid(0), S);
      if (!c) return std::nullopt;
      std::uint64_t total = 0, term = 1;
      for (std::uint64_t k = 0; k <= *c; ++k) {
        if (k) term = checked_mul(term, *c - k + 1);
        if (k || !e.n()) total = checked_add(total, term);
      }
      return total;
    }
    case SetKind::Tuples: {
      R c = count_supported(e.kid(0), S);
      if (is_zero(c)) return 1;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace fsmkit
