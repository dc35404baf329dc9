#include "fsmkit/cardinality.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fsmkit {

// ---------------------------------------------------------------- carriers

Carrier Carrier::of(SetExpr e) {
  Carrier c;
  c.expr = std::move(e);
  return c;
}

Carrier Carrier::finite(std::vector<Element> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Carrier c;
  for (const auto& x : xs) {
    auto s = support(x);
    c.atoms.insert(s.begin(), s.end());
  }
  c.elements = std::move(xs);
  return c;
}

Carrier Carrier::restricted(SetExpr e, std::function<bool(const Element&)> p, std::string label,
                            AtomSet support) {
  Carrier c;
  c.expr = std::move(e);
  c.restrict = std::move(p);
  c.label = std::move(label);
  c.atoms = std::move(support);
  return c;
}

bool Carrier::contains(const Element& x) const {
  if (elements) return std::binary_search(elements->begin(), elements->end(), x);
  if (expr && !member(x, *expr)) return false;
  return !restrict || restrict(x);
}

std::string Carrier::describe() const {
  if (!label.empty()) return label;
  if (elements) {
    std::string s = "{";
    for (std::size_t i = 0; i < elements->size(); ++i) {
      if (i == 6) {
        s += ", ...";
        break;
      }
      if (i) s += ", ";
      s += to_string((*elements)[i]);
    }
    return s + "}";
  }
  if (expr) return display_name(*expr);
  return "?";
}

namespace {

AtomSet unite(std::initializer_list<const AtomSet*> parts) {
  AtomSet out;
  for (const AtomSet* p : parts) out.insert(p->begin(), p->end());
  return out;
}

bool subset(const AtomSet& a, const AtomSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Atom atom_of(const Element& x) {
  if (x.kind() != Kind::Atom) throw DomainError(to_string(x) + " is not an atom");
  return x.as<el::AtomV>().a;
}

}  // namespace

Carrier carrier_sum(const Carrier& x, const Carrier& y) {
  Carrier c;
  if (x.elements && y.elements) {
    std::vector<Element> xs;
    for (const auto& a : *x.elements) xs.push_back(inl(a));
    for (const auto& b : *y.elements) xs.push_back(inr(b));
    return Carrier::finite(std::move(xs));
  }
  if (x.expr && y.expr && !x.restrict && !y.restrict) return Carrier::of(u::sum(*x.expr, *y.expr));
  c.restrict = [x, y](const Element& e) {
    if (e.kind() == Kind::InL) return x.contains(e.as<el::InL>().v);
    if (e.kind() == Kind::InR) return y.contains(e.as<el::InR>().v);
    return false;
  };
  c.label = x.describe() + " + " + y.describe();
  c.atoms = unite({&x.atoms, &y.atoms});
  return c;
}

Carrier carrier_prod(const Carrier& x, const Carrier& y) {
  Carrier c;
  if (x.elements && y.elements) {
    std::vector<Element> xs;
    for (const auto& a : *x.elements)
      for (const auto& b : *y.elements) xs.push_back(pair(a, b));
    return Carrier::finite(std::move(xs));
  }
  if (x.expr && y.expr && !x.restrict && !y.restrict) return Carrier::of(u::prod(*x.expr, *y.expr));
  c.restrict = [x, y](const Element& e) {
    return e.kind() == Kind::Pair && x.contains(e.as<el::Pair>().first) && y.contains(e.as<el::Pair>().second);
  };
  c.label = x.describe() + " × " + y.describe();
  c.atoms = unite({&x.atoms, &y.atoms});
  return c;
}

std::string_view evidence_name(Evidence e) {
  switch (e) {
    case Evidence::None: return "none";
    case Evidence::ProvedByConstruction: return "proved-by-construction";
    case Evidence::CheckedByEnumeration: return "checked-by-enumeration";
    case Evidence::Unverified: return "unverified";
  }
  return "?";
}

// ---------------------------------------------------------------- witnesses

Element eval(const FsMapWitness& f, const Element& x) {
  if (!f.domain.contains(x)) throw DomainError(to_string(x) + " is not in " + f.domain.describe());
  if (f.fresh_range) {
    std::size_t outside = 0;
    for (Atom a : support(x))
      if (!f.support.count(a)) ++outside;
    if (outside > *f.fresh_range) throw DomainError(to_string(x) + " is outside the witnessed range");
  }
  Element y = f.fn(x);
  if (!f.codomain.contains(y))
    throw std::logic_error(f.rule + " sent " + to_string(x) + " to " + to_string(y) + " outside " +
                           f.codomain.describe());
  return y;
}

json to_json(const FsMapWitness& f) {
  json j = {{"kind", "witness"},
            {"rule", f.rule},
            {"domain", f.domain.describe()},
            {"codomain", f.codomain.describe()},
            {"support", atoms_json(f.support)},
            {"cert",
             {{"injective", std::string(evidence_name(f.cert.injective))},
              {"surjective", std::string(evidence_name(f.cert.surjective))}}}};
  json ps = json::array();
  for (const auto& p : f.params) ps.push_back(to_json(p));
  j["params"] = ps;
  if (f.fresh_range) j["fresh_range"] = *f.fresh_range;
  return j;
}

FsMapWitness identity_map(const Carrier& x) {
  FsMapWitness w;
  w.domain = w.codomain = x;
  w.rule = "identity";
  w.support = x.atoms;
  w.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
  w.fn = [](const Element& e) { return e; };
  w.preimage = [x](const Element& e) -> std::optional<Element> {
    if (x.contains(e)) return e;
    return std::nullopt;
  };
  return w;
}

FsMapWitness finmap_witness(const Carrier& dom, const Carrier& cod, std::vector<std::pair<Element, Element>> graph) {
  Element m = finmap(std::move(graph));
  const auto& g = m.as<el::FinMap>().graph;
  std::map<Element, Element> inverse;
  bool injective = true;
  for (const auto& [k, v] : g)
    if (!inverse.emplace(v, k).second) injective = false;

  FsMapWitness w;
  w.domain = dom;
  w.codomain = cod;
  w.rule = "finmap";
  w.params = {m};
  w.support = support(m);
  w.fn = [m](const Element& x) {
    auto v = finmap_get(m, x);
    if (!v) throw DomainError(to_string(x) + " is not in the graph");
    return *v;
  };
  if (dom.elements) {
    bool total = dom.elements->size() == g.size();
    if (total && injective) w.cert.injective = Evidence::CheckedByEnumeration;
    if (total && cod.elements && inverse.size() == cod.elements->size())
      w.cert.surjective = Evidence::CheckedByEnumeration;
  }
  if (injective)
    w.preimage = [inverse](const Element& y) -> std::optional<Element> {
      auto it = inverse.find(y);
      if (it == inverse.end()) return std::nullopt;
      return it->second;
    };
  return w;
}

FsMapWitness classified_witness(const ClassifiedAtomFn& f) {
  FsMapWitness w;
  w.domain = w.codomain = Carrier::of(u::atoms());
  w.rule = "classified";
  w.params = {to_element(f)};
  w.support = atom_fn_support(f);
  w.fn = [f](const Element& x) { return mk_atom(apply_atom_fn(f, atom_of(x))); };
  bool perm = !f.constant;
  AtomSet keys, vals;
  for (const auto& [k, v] : f.exceptions) {
    keys.insert(k);
    vals.insert(v);
  }
  perm = perm && keys == vals;
  if (perm) {
    w.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
    std::map<Atom, Atom> inv;
    for (const auto& [k, v] : f.exceptions) inv[v] = k;
    w.preimage = [inv](const Element& y) -> std::optional<Element> {
      if (y.kind() != Kind::Atom) return std::nullopt;
      Atom a = y.as<el::AtomV>().a;
      auto it = inv.find(a);
      return mk_atom(it == inv.end() ? a : it->second);
    };
  }
  return w;
}

FsMapWitness singleton_map() {
  FsMapWitness w;
  w.domain = Carrier::of(u::atoms());
  w.codomain = Carrier::of(u::fs_pow(u::atoms()));
  w.rule = "singleton";
  w.cert.injective = Evidence::ProvedByConstruction;
  w.fn = [](const Element& x) { return finset({x}); };
  w.preimage = [](const Element& y) -> std::optional<Element> {
    if (y.kind() == Kind::FinSet && y.as<el::FinSet>().members.size() == 1) {
      const Element& m = y.as<el::FinSet>().members[0];
      if (m.kind() == Kind::Atom) return m;
    }
    return std::nullopt;
  };
  return w;
}

FsMapWitness lem3_f(Atom a) {
  FsMapWitness w;
  w.domain = Carrier::of(u::inj_tuples(u::atoms()));
  w.codomain = Carrier::of(u::inj_tuples_nonempty(u::atoms()));
  w.rule = "lem3-f";
  w.params = {mk_atom(a)};
  w.support = {a};
  w.cert.surjective = Evidence::ProvedByConstruction;
  Element def = atom_tuple({a});
  w.fn = [def](const Element& x) { return x.as<el::Seq>().entries.empty() ? def : x; };
  return w;
}

FsMapWitness lem3_g() {
  FsMapWitness w;
  w.domain = Carrier::of(u::inj_tuples_nonempty(u::atoms()));
  w.codomain = Carrier::of(u::inj_tuples(u::atoms()));
  w.rule = "lem3-g";
  w.cert.surjective = Evidence::ProvedByConstruction;
  w.fn = [](const Element& x) {
    const auto& v = x.as<el::Seq>().entries;
    return tuple(std::vector<Element>(v.begin() + 1, v.end()));
  };
  return w;
}

FsMapWitness cantor_s(Atom y) {
  FsMapWitness w;
  w.domain = Carrier::of(u::fs_pow(u::atoms()));
  w.codomain = Carrier::of(u::atoms());
  w.rule = "cantor-s";
  w.params = {mk_atom(y)};
  w.support = {y};
  w.cert.surjective = Evidence::ProvedByConstruction;
  Element def = mk_atom(y);
  w.fn = [def](const Element& x) {
    if (x.kind() == Kind::FinSet && x.as<el::FinSet>().members.size() == 1) return x.as<el::FinSet>().members[0];
    return def;
  };
  return w;
}

FsMapWitness complement_bijection() {
  FsMapWitness w;
  w.domain = Carrier::of(u::fin_pow(u::atoms()));
  w.codomain = Carrier::of(u::cofin_pow());
  w.rule = "complement";
  w.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
  w.fn = [](const Element& x) {
    auto s = to_fin_or_cofin(x);
    return to_element(setop(SetOp::Complement, s));
  };
  w.preimage = [](const Element& y) -> std::optional<Element> {
    if (y.kind() != Kind::Cofin) return std::nullopt;
    return to_element(setop(SetOp::Complement, to_fin_or_cofin(y)));
  };
  return w;
}

std::pair<FsMapWitness, FsMapWitness> char_bijection(const Carrier& x) {
  FsMapWitness fwd, back;
  fwd.rule = "characteristic";
  back.rule = "characteristic-inverse";
  fwd.support = back.support = x.atoms;
  fwd.cert = back.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};

  if (x.elements) {
    const auto& xs = *x.elements;
    if (xs.size() > 16) throw PreconditionError("finite carrier too large to tabulate");
    std::vector<Element> subsets, chars;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
      std::vector<Element> members;
      std::vector<std::pair<Element, Element>> graph;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        bool in = (mask >> i) & 1;
        if (in) members.push_back(xs[i]);
        graph.emplace_back(xs[i], nat(in));
      }
      subsets.push_back(finset(members));
      chars.push_back(finmap(graph));
    }
    fwd.domain = back.codomain = Carrier::finite(subsets);
    fwd.codomain = back.domain = Carrier::finite(chars);
    fwd.fn = [xs](const Element& y) {
      std::vector<std::pair<Element, Element>> graph;
      for (const auto& e : xs) graph.emplace_back(e, nat(finset_contains(y, e)));
      return finmap(graph);
    };
    back.fn = [](const Element& phi) {
      std::vector<Element> members;
      for (const auto& [k, v] : phi.as<el::FinMap>().graph)
        if (v == nat(1)) members.push_back(k);
      return finset(members);
    };
    return {fwd, back};
  }

  if (!x.expr || *x.expr != u::atoms() || x.restrict)
    throw PreconditionError("characteristic bijection needs A or a finite carrier");
  auto is_binary = [](const Element& phi) {
    if (phi.kind() != Kind::AtomFn) return false;
    const auto& f = phi.as<el::AtomFn>();
    auto bit = [](const Element& v) { return v == nat(0) || v == nat(1); };
    if (!bit(f.tail)) return false;
    return std::all_of(f.exceptions.begin(), f.exceptions.end(), [&](const auto& kv) { return bit(kv.second); });
  };
  fwd.domain = back.codomain = Carrier::of(u::fs_pow(u::atoms()));
  fwd.codomain = back.domain =
      Carrier::restricted(u::fn(u::atoms(), u::naturals()), is_binary, "{0,1}^A_fs");
  fwd.fn = [](const Element& y) {
    auto s = to_fin_or_cofin(y);
    std::vector<std::pair<Atom, Element>> ex;
    for (Atom a : s.carrier) ex.emplace_back(a, nat(s.cofinite ? 0 : 1));
    return atom_fn(ex, nat(s.cofinite ? 1 : 0));
  };
  back.fn = [](const Element& phi) {
    const auto& f = phi.as<el::AtomFn>();
    bool cofinite = f.tail == nat(1);
    AtomSet carrier;
    for (const auto& [k, v] : f.exceptions)
      if ((v == nat(1)) != cofinite) carrier.insert(k);
    return to_element(FinOrCofinAtomSet{cofinite, carrier});
  };
  return {fwd, back};
}

Element tabulate_atom_fn(const std::function<Element(Atom)>& g, const AtomSet& bound) {
  Atom c = fresh_atom(bound);
  Element tail = map_atoms(g(c), [c](Atom a) { return a == c ? kHole : a; });
  std::vector<std::pair<Atom, Element>> ex;
  for (Atom k : bound) ex.emplace_back(k, g(k));
  return atom_fn(std::move(ex), tail);
}

// ---------------------------------------------------------------- checks

namespace {

std::vector<Element> sample_domain(const FsMapWitness& f, const AtomSet& base) {
  std::vector<Element> out;
  if (f.domain.elements) return *f.domain.elements;
  if (f.domain.expr) {
    std::size_t fresh = std::min<std::size_t>(2, f.fresh_range.value_or(2));
    for (std::size_t k = fresh + 1; k-- > 0;) {
      AtomSet pool = base;
      for (Atom a : fresh_atoms(base, k)) pool.insert(a);
      try {
        Slice s = enumerate_slice(*f.domain.expr, pool, {3, 50'000});
        if (s.status == SliceStatus::OverBudget) continue;
        for (auto& x : s.elements)
          if (f.domain.contains(x)) out.push_back(std::move(x));
        return out;
      } catch (const Unsupported&) {
        break;
      }
    }
  }
  return out;
}

}  // namespace

EquivarianceReport equivariance_check(const FsMapWitness& f, std::size_t trials, std::mt19937_64& rng) {
  EquivarianceReport r;
  AtomSet base = unite({&f.support, &f.domain.atoms, &f.codomain.atoms});
  auto xs = sample_domain(f, base);
  if (xs.empty()) return r;
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  for (std::size_t t = 0; t < trials; ++t) {
    const Element& x = xs[pick(rng)];
    AtomSet used = base;
    auto sx = support(x);
    used.insert(sx.begin(), sx.end());
    std::vector<Atom> movable;
    for (Atom a : sx)
      if (!base.count(a)) movable.push_back(a);
    for (Atom a : fresh_atoms(used, 3)) movable.push_back(a);
    std::vector<Atom> img = movable;
    std::shuffle(img.begin(), img.end(), rng);
    std::map<Atom, Atom> m;
    for (std::size_t i = 0; i < movable.size(); ++i) m[movable[i]] = img[i];
    auto pi = FinPermutation::from_map(m);
    ++r.trials;
    bool ok;
    try {
      ok = eval(f, act(pi, x)) == act(pi, eval(f, x));
    } catch (const DomainError&) {
      ok = false;
    }
    if (!ok) {
      r.ok = false;
      r.failure = std::make_pair(pi, x);
      return r;
    }
  }
  return r;
}

bool injective_on(const FsMapWitness& f, const std::vector<Element>& xs) {
  std::set<Element> seen;
  for (const auto& x : xs)
    if (!seen.insert(eval(f, x)).second) return false;
  return true;
}

bool hits_all(const FsMapWitness& f, const std::vector<Element>& xs, const std::vector<Element>& ys) {
  std::set<Element> img;
  for (const auto& x : xs) img.insert(eval(f, x));
  return std::all_of(ys.begin(), ys.end(), [&](const Element& y) { return img.count(y) > 0; });
}

// ---------------------------------------------------------------- CSB

CsbResult csb(const FsMapWitness& f, const FsMapWitness& g, std::size_t max_iter) {
  if (!f.domain.elements || !f.codomain.elements || !g.domain.elements || !g.codomain.elements)
    throw PreconditionError("csb needs finite carriers; use csb_traced");
  const auto& X = *f.domain.elements;
  const auto& Y = *f.codomain.elements;
  if (*g.domain.elements != Y || *g.codomain.elements != X)
    throw PreconditionError("g must map the codomain of f back to its domain");

  std::map<Element, Element> fx, gy, ginv;
  std::set<Element> fimg;
  for (const auto& x : X) {
    Element v = eval(f, x);
    if (!fimg.insert(v).second) throw PreconditionError("f is not injective");
    fx.emplace(x, v);
  }
  for (const auto& y : Y) {
    Element v = eval(g, y);
    if (!ginv.emplace(v, y).second) throw PreconditionError("g is not injective");
    gy.emplace(y, v);
  }

  auto F = [&](const std::set<Element>& Z) {
    std::set<Element> fz;
    for (const auto& z : Z) fz.insert(fx.at(z));
    std::set<Element> gout;
    for (const auto& y : Y)
      if (!fz.count(y)) gout.insert(gy.at(y));
    std::set<Element> out;
    for (const auto& x : X)
      if (!gout.count(x)) out.insert(x);
    return out;
  };

  CsbResult r;
  std::set<Element> T(X.begin(), X.end());
  for (;;) {
    auto next = F(T);
    if (next == T) break;
    T = std::move(next);
    if (++r.iterations > max_iter) throw NonConvergent("csb did not stabilize");
  }
  r.fixed_point_ok = F(T) == T;
  r.T.assign(T.begin(), T.end());

  std::vector<std::pair<Element, Element>> graph;
  std::set<Element> hit;
  for (const auto& x : X) {
    Element v = T.count(x) ? fx.at(x) : ginv.at(x);
    hit.insert(v);
    graph.emplace_back(x, v);
  }
  if (hit.size() != Y.size()) throw std::logic_error("csb produced a non-bijection");
  r.h = finmap_witness(f.domain, f.codomain, std::move(graph));
  r.h.rule = "csb";
  AtomSet bound = unite({&f.support, &g.support, &f.domain.atoms, &f.codomain.atoms});
  r.support_ok = subset(r.h.support, bound);
  return r;
}

FsMapWitness csb_traced(const FsMapWitness& f, const FsMapWitness& g, std::size_t max_depth) {
  if (f.cert.injective == Evidence::None || g.cert.injective == Evidence::None || !f.preimage || !g.preimage)
    throw PreconditionError("csb needs injective witnesses with preimages");
  auto in_T = [f, g, max_depth](const Element& x) {
    std::set<Element> seen{x};
    Element cur = x;
    for (std::size_t d = 0; d < max_depth; ++d) {
      auto y = g.preimage(cur);
      if (!y) return true;
      auto up = f.preimage(*y);
      if (!up) return false;
      if (!seen.insert(*up).second) return true;
      cur = *up;
    }
    throw Inconclusive("preimage chain of " + to_string(x) + " exceeds depth " + std::to_string(max_depth));
  };
  FsMapWitness h;
  h.domain = f.domain;
  h.codomain = f.codomain;
  h.rule = "csb";
  h.support = unite({&f.support, &g.support, &f.domain.atoms, &f.codomain.atoms});
  h.cert = {Evidence::ProvedByConstruction, Evidence::ProvedByConstruction};
  h.fn = [f, g, in_T](const Element& x) {
    if (in_T(x)) return eval(f, x);
    return *g.preimage(x);
  };
  h.preimage = [f, g, in_T](const Element& y) -> std::optional<Element> {
    if (!f.codomain.contains(y)) return std::nullopt;
    if (auto x = f.preimage(y); x && in_T(*x)) return x;
    return eval(g, y);
  };
  return h;
}

FsMapWitness injection_to_surjection(const FsMapWitness& f, const Element& x0) {
  if (f.cert.injective == Evidence::None || !f.preimage) throw PreconditionError("f must be injective");
  if (!f.domain.contains(x0)) throw DomainError(to_string(x0) + " is not in " + f.domain.describe());
  FsMapWitness w;
  w.domain = f.codomain;
  w.codomain = f.domain;
  w.rule = "inverse-or-default";
  w.params = {x0};
  auto sx = support(x0);
  w.support = unite({&f.support, &sx, &f.domain.atoms, &f.codomain.atoms});
  w.cert.surjective = Evidence::ProvedByConstruction;
  w.fresh_range = f.fresh_range;
  w.fn = [f, x0](const Element& y) { return f.preimage(y).value_or(x0); };
  return w;
}

bool set_contains(const Element& set, const Element& x) {
  switch (set.kind()) {
    case Kind::FinSet: return finset_contains(set, x);
    case Kind::Cofin: return x.kind() == Kind::Atom && atomset_contains(set, x.as<el::AtomV>().a);
    case Kind::NatSet: return x.kind() == Kind::Nat && natset_contains(set, x.as<el::Nat>().n);
    case Kind::SumSet:
      if (x.kind() == Kind::InL) return set_contains(set.as<el::SumSet>().left, x.as<el::InL>().v);
      if (x.kind() == Kind::InR) return set_contains(set.as<el::SumSet>().right, x.as<el::InR>().v);
      return false;
    case Kind::Universe: return member(x, set.as<el::Universe>().expr);
    default: throw DomainError(to_string(set) + " is not a set");
  }
}

FsMapWitness preimage_injection(const FsMapWitness& f, const std::vector<Element>& probe) {
  if (f.cert.surjective == Evidence::None) throw PreconditionError("f must be surjective");
  std::vector<Element> xs;
  std::set<Element> image;
  AtomSet probe_atoms;
  for (const auto& x : probe) {
    if (!f.domain.contains(x)) continue;
    xs.push_back(x);
    image.insert(eval(f, x));
    auto s = support(x);
    probe_atoms.insert(s.begin(), s.end());
  }
  FsMapWitness w;
  w.rule = "preimage";
  w.params = {finset(xs)};
  w.support = unite({&f.support, &probe_atoms, &f.domain.atoms, &f.codomain.atoms});
  w.cert.injective = Evidence::ProvedByConstruction;
  w.domain.restrict = [image](const Element& v) {
    if (v.kind() != Kind::FinSet) return false;
    const auto& m = v.as<el::FinSet>().members;
    return std::all_of(m.begin(), m.end(), [&](const Element& y) { return image.count(y) > 0; });
  };
  w.domain.label = "finite subsets of f[probe]";
  w.domain.atoms = w.support;
  std::set<Element> members(xs.begin(), xs.end());
  w.codomain.restrict = [members](const Element& u) {
    if (u.kind() != Kind::FinSet) return false;
    const auto& m = u.as<el::FinSet>().members;
    return std::all_of(m.begin(), m.end(), [&](const Element& x) { return members.count(x) > 0; });
  };
  w.codomain.label = "finite subsets of the probe";
  w.codomain.atoms = probe_atoms;
  w.fn = [f, xs](const Element& v) {
    std::vector<Element> out;
    for (const auto& x : xs)
      if (set_contains(v, eval(f, x))) out.push_back(x);
    return finset(out);
  };
  w.preimage = [f, xs](const Element& u) -> std::optional<Element> {
    if (u.kind() != Kind::FinSet) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : u.as<el::FinSet>().members) out.push_back(eval(f, x));
    return finset(out);
  };
  return w;
}

// ---------------------------------------------------------------- arithmetic

std::string_view rule_name(ArithRule r) {
  switch (r) {
    case ArithRule::SumMono: return "sum-mono";
    case ArithRule::ProdMono: return "prod-mono";
    case ArithRule::ExpMonoBase: return "exp-mono-base";
    case ArithRule::ExpMonoExp: return "exp-mono-exp";
    case ArithRule::SumLeqProd: return "sum-leq-prod";
  }
  return "?";
}

namespace {

const FsMapWitness& need_injection(const ArithInput& in) {
  if (!in.f) throw PreconditionError("rule needs an injection f");
  if (in.f->cert.injective == Evidence::None) throw PreconditionError("f must be injective");
  return *in.f;
}

const SetExpr& need_expr(const Carrier& c) {
  if (!c.expr || c.restrict) throw PreconditionError(c.describe() + " is not a universe");
  return *c.expr;
}

FsMapWitness sum_mono(const ArithInput& in) {
  const auto& f = need_injection(in);
  if (!in.z) throw PreconditionError("sum-mono needs Z");
  Carrier z = *in.z;
  FsMapWitness w;
  w.domain = carrier_sum(f.domain, z);
  w.codomain = carrier_sum(f.codomain, z);
  w.support = unite({&f.support, &f.domain.atoms, &f.codomain.atoms, &z.atoms});
  w.cert.injective = Evidence::ProvedByConstruction;
  w.fn = [f](const Element& u) {
    if (u.kind() == Kind::InL) return inl(eval(f, u.as<el::InL>().v));
    return u;
  };
  if (f.preimage)
    w.preimage = [f, z](const Element& v) -> std::optional<Element> {
      if (v.kind() == Kind::InL) {
        auto x = f.preimage(v.as<el::InL>().v);
        if (x) return inl(*x);
        return std::nullopt;
      }
      if (v.kind() == Kind::InR && z.contains(v.as<el::InR>().v)) return v;
      return std::nullopt;
    };
  return w;
}

FsMapWitness prod_mono(const ArithInput& in) {
  const auto& f = need_injection(in);
  if (!in.z) throw PreconditionError("prod-mono needs Z");
  Carrier z = *in.z;
  FsMapWitness w;
  w.domain = carrier_prod(f.domain, z);
  w.codomain = carrier_prod(f.codomain, z);
  w.support = unite({&f.support, &f.domain.atoms, &f.codomain.atoms, &z.atoms});
  w.cert.injective = Evidence::ProvedByConstruction;
  w.fn = [f](const Element& u) { return pair(eval(f, u.as<el::Pair>().first), u.as<el::Pair>().second); };
  if (f.preimage)
    w.preimage = [f, z](const Element& v) -> std::optional<Element> {
      if (v.kind() != Kind::Pair || !z.contains(v.as<el::Pair>().second)) return std::nullopt;
      auto x = f.preimage(v.as<el::Pair>().first);
      if (!x) return std::nullopt;
      return pair(*x, v.as<el::Pair>().second);
    };
  return w;
}

FsMapWitness exp_mono_base(const ArithInput& in) {
  const auto& f = need_injection(in);
  if (in.z && (!in.z->expr || *in.z->expr != u::atoms())) throw PreconditionError("exp-mono-base supports Z = A");
  FsMapWitness w;
  w.domain = Carrier::of(u::fn(u::atoms(), need_expr(f.domain)));
  w.codomain = Carrier::of(u::fn(u::atoms(), need_expr(f.codomain)));
  w.support = unite({&f.support, &f.domain.atoms, &f.codomain.atoms});
  w.cert.injective = Evidence::ProvedByConstruction;
  AtomSet fs = f.support;
  w.fn = [f, fs](const Element& h) {
    AtomSet bound = support(h);
    bound.insert(fs.begin(), fs.end());
    return tabulate_atom_fn([&](Atom a) { return eval(f, fn_apply(h, a)); }, bound);
  };
  if (f.preimage)
    w.preimage = [f, fs](const Element& k) -> std::optional<Element> {
      if (k.kind() != Kind::AtomFn) return std::nullopt;
      AtomSet bound = support(k);
      bound.insert(fs.begin(), fs.end());
      bool ok = true;
      Element h = tabulate_atom_fn(
          [&](Atom a) {
            auto x = f.preimage(fn_apply(k, a));
            if (!x) {
              ok = false;
              return nat(0);
            }
            return *x;
          },
          bound);
      if (!ok) return std::nullopt;
      return h;
    };
  return w;
}

FsMapWitness exp_mono_exp(const ArithInput& in) {
  const auto& f = need_injection(in);
  if (!f.domain.expr || *f.domain.expr != u::atoms() || !f.codomain.expr || *f.codomain.expr != u::atoms())
    throw PreconditionError("exp-mono-exp supports X = Y = A");
  if (!in.z) throw PreconditionError("exp-mono-exp needs Z");
  if (in.picks.empty()) throw PreconditionError("exp-mono-exp needs a default atom");
  FsMapWitness fp = injection_to_surjection(f, in.picks[0]);
  const SetExpr& z = need_expr(*in.z);
  FsMapWitness w;
  w.domain = w.codomain = Carrier::of(u::fn(u::atoms(), z));
  w.params = {in.picks[0]};
  w.support = unite({&fp.support, &in.z->atoms});
  w.cert.injective = Evidence::ProvedByConstruction;
  w.fn = [fp](const Element& h) {
    AtomSet bound = support(h);
    bound.insert(fp.support.begin(), fp.support.end());
    return tabulate_atom_fn([&](Atom a) { return fn_apply(h, atom_of(eval(fp, mk_atom(a)))); }, bound);
  };
  auto fwd = w.fn;
  w.preimage = [f, fwd](const Element& k) -> std::optional<Element> {
    if (k.kind() != Kind::AtomFn) return std::nullopt;
    AtomSet bound = support(k);
    bound.insert(f.support.begin(), f.support.end());
    Element h = tabulate_atom_fn([&](Atom a) { return fn_apply(k, atom_of(eval(f, mk_atom(a)))); }, bound);
    if (fwd(h) != k) return std::nullopt;
    return h;
  };
  return w;
}

FsMapWitness sum_leq_prod(const ArithInput& in) {
  if (in.picks.size() != 4) throw PreconditionError("sum-leq-prod needs x0, x1, y0, y1");
  const Element &x0 = in.picks[0], &x1 = in.picks[1], &y0 = in.picks[2], &y1 = in.picks[3];
  if (x0 == x1 || y0 == y1) throw PreconditionError("sum-leq-prod needs two distinct elements in each factor");
  if (!in.x.contains(x0) || !in.x.contains(x1) || !in.y.contains(y0) || !in.y.contains(y1))
    throw PreconditionError("chosen elements lie outside the factors");
  FsMapWitness w;
  w.domain = carrier_sum(in.x, in.y);
  w.codomain = carrier_prod(in.x, in.y);
  w.params = in.picks;
  w.support = unite({&in.x.atoms, &in.y.atoms});
  for (const auto& p : in.picks) {
    auto s = support(p);
    w.support.insert(s.begin(), s.end());
  }
  w.cert.injective = Evidence::ProvedByConstruction;
  w.fn = [=](const Element& u) {
    if (u.kind() == Kind::InR) return pair(x0, u.as<el::InR>().v);
    const Element& x = u.as<el::InL>().v;
    return x == x0 ? pair(x1, y1) : pair(x, y0);
  };
  w.preimage = [=](const Element& v) -> std::optional<Element> {
    if (v.kind() != Kind::Pair) return std::nullopt;
    const Element &x = v.as<el::Pair>().first, &y = v.as<el::Pair>().second;
    if (x == x0) return inr(y);
    if (x == x1 && y == y1) return inl(x0);
    if (y == y0) return inl(x);
    return std::nullopt;
  };
  return w;
}

}  // namespace

FsMapWitness card_arith(ArithRule rule, const ArithInput& in) {
  FsMapWitness w;
  switch (rule) {
    case ArithRule::SumMono: w = sum_mono(in); break;
    case ArithRule::ProdMono: w = prod_mono(in); break;
    case ArithRule::ExpMonoBase: w = exp_mono_base(in); break;
    case ArithRule::ExpMonoExp: w = exp_mono_exp(in); break;
    case ArithRule::SumLeqProd: w = sum_leq_prod(in); break;
  }
  w.rule = std::string(rule_name(rule));
  if (in.f && w.params.empty()) w.params = in.f->params;
  return w;
}

}  // namespace fsmkit
