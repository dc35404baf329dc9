#include "fsmkit/element.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fsmkit {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Atom: return "atom";
    case Kind::Nat: return "nat";
    case Kind::Pair: return "pair";
    case Kind::InL: return "inl";
    case Kind::InR: return "inr";
    case Kind::FinSet: return "finset";
    case Kind::Cofin: return "cofin";
    case Kind::InjTuple: return "injtuple";
    case Kind::Tuple: return "tuple";
    case Kind::AtomFn: return "atomfn";
    case Kind::FinMap: return "finmap";
    case Kind::AtomSeq: return "atomseq";
    case Kind::NatSet: return "natset";
    case Kind::SumSet: return "sumset";
    case Kind::Universe: return "universe";
  }
  return "?";
}

namespace {
template <class T>
Element make(Kind k, T v) {
  return Element(std::make_shared<const ElementNode>(ElementNode{k, std::move(v)}));
}

const std::shared_ptr<const ElementNode>& zero_node() {
  static const std::shared_ptr<const ElementNode> z =
      std::make_shared<const ElementNode>(ElementNode{Kind::Nat, el::Nat{0}});
  return z;
}

template <class T>
void canonical_period(std::vector<T>& prefix, std::vector<T>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("eventually periodic value needs a nonempty cycle");
  std::size_t n = cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = cycle[i] == cycle[i - p];
    if (ok) {
      cycle.resize(p);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    T last = cycle.back();
    cycle.pop_back();
    cycle.insert(cycle.begin(), last);
    prefix.pop_back();
  }
}
}  // namespace

Element::Element() : node_(zero_node()) {}

Kind Element::kind() const { return node_->kind; }

bool operator==(const Element& a, const Element& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node_->v);
        auto c = x <=> y;
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
      },
      a.node_->v);
}

Element mk_atom(Atom a) { return make(Kind::Atom, el::AtomV{a}); }
Element nat(std::uint64_t n) { return make(Kind::Nat, el::Nat{n}); }
Element pair(Element a, Element b) { return make(Kind::Pair, el::Pair{std::move(a), std::move(b)}); }
Element inl(Element x) { return make(Kind::InL, el::InL{std::move(x)}); }
Element inr(Element x) { return make(Kind::InR, el::InR{std::move(x)}); }

Element finset(std::vector<Element> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return make(Kind::FinSet, el::FinSet{std::move(xs)});
}

Element atom_set(const AtomSet& s) {
  std::vector<Element> xs;
  for (Atom a : s) xs.push_back(mk_atom(a));
  return finset(std::move(xs));
}

Element cofin(const AtomSet& complement) {
  return make(Kind::Cofin, el::Cofin{{complement.begin(), complement.end()}});
}

Element tuple(std::vector<Element> xs) {
  std::vector<Element> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return make(injective ? Kind::InjTuple : Kind::Tuple, el::Seq{std::move(xs)});
}

Element atom_tuple(const std::vector<Atom>& xs) {
  std::vector<Element> es;
  for (Atom a : xs) es.push_back(mk_atom(a));
  return tuple(std::move(es));
}

Element instantiate(const Element& tail, Atom a) {
  return map_atoms(tail, [a](Atom b) { return b == kHole ? a : b; });
}

Element atom_fn(std::vector<std::pair<Atom, Element>> exceptions, Element tail) {
  if (tail.kind() == Kind::AtomFn) throw std::invalid_argument("atom function tail cannot be a function");
  std::sort(exceptions.begin(), exceptions.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<Atom, Element>> kept;
  for (std::size_t i = 0; i < exceptions.size(); ++i) {
    const auto& [k, v] = exceptions[i];
    if (k == kHole) throw std::invalid_argument("hole atom cannot be an exception key");
    if (i && exceptions[i - 1].first == k)
      throw std::invalid_argument("duplicate exception key " + to_string(k));
    if (support(v).count(kHole)) throw std::invalid_argument("exception value mentions the hole");
    bool redundant = false;
    try {
      redundant = v == instantiate(tail, k);
    } catch (const std::invalid_argument&) {
    }
    if (!redundant) kept.emplace_back(k, v);
  }
  return make(Kind::AtomFn, el::AtomFn{std::move(kept), std::move(tail)});
}

Element finmap(std::vector<std::pair<Element, Element>> graph) {
  std::sort(graph.begin(), graph.end());
  graph.erase(std::unique(graph.begin(), graph.end()), graph.end());
  for (std::size_t i = 1; i < graph.size(); ++i)
    if (graph[i].first == graph[i - 1].first)
      throw std::invalid_argument("finite map has two values for " + to_string(graph[i].first));
  return make(Kind::FinMap, el::FinMap{std::move(graph)});
}

Element atom_seq(std::vector<Atom> prefix, std::vector<Atom> cycle) {
  canonical_period(prefix, cycle);
  return make(Kind::AtomSeq, el::AtomSeq{std::move(prefix), std::move(cycle)});
}

Element nat_set(std::vector<bool> prefix, std::vector<bool> cycle) {
  canonical_period(prefix, cycle);
  return make(Kind::NatSet, el::NatSet{std::move(prefix), std::move(cycle)});
}

Element nat_set_finite(const std::vector<std::uint64_t>& members) {
  std::vector<bool> bits;
  for (auto m : members) {
    if (bits.size() <= m) bits.resize(m + 1, false);
    bits[m] = true;
  }
  return nat_set(std::move(bits), {false});
}

Element sum_set(Element left, Element right) {
  return make(Kind::SumSet, el::SumSet{std::move(left), std::move(right)});
}

Element universe(SetExpr e) { return make(Kind::Universe, el::Universe{std::move(e)}); }

Element identity_fn() { return atom_fn({}, mk_atom(kHole)); }
Element const_fn(Element value) { return atom_fn({}, std::move(value)); }

Element fn_apply(const Element& f, Atom a) {
  const auto& fn = f.as<el::AtomFn>();
  auto it = std::lower_bound(fn.exceptions.begin(), fn.exceptions.end(), a,
                             [](const auto& kv, Atom x) { return kv.first < x; });
  if (it != fn.exceptions.end() && it->first == a) return it->second;
  return instantiate(fn.tail, a);
}

Atom seq_at(const Element& s, std::uint64_t k) {
  const auto& q = s.as<el::AtomSeq>();
  if (k < q.prefix.size()) return q.prefix[k];
  return q.cycle[(k - q.prefix.size()) % q.cycle.size()];
}

bool natset_contains(const Element& s, std::uint64_t k) {
  const auto& q = s.as<el::NatSet>();
  if (k < q.prefix.size()) return q.prefix[k];
  return q.cycle[(k - q.prefix.size()) % q.cycle.size()];
}

std::optional<std::uint64_t> natset_size(const Element& s) {
  const auto& q = s.as<el::NatSet>();
  for (bool b : q.cycle)
    if (b) return std::nullopt;
  return static_cast<std::uint64_t>(std::count(q.prefix.begin(), q.prefix.end(), true));
}

std::optional<Element> finmap_get(const Element& m, const Element& key) {
  const auto& g = m.as<el::FinMap>().graph;
  auto it = std::lower_bound(g.begin(), g.end(), key,
                             [](const auto& kv, const Element& x) { return kv.first < x; });
  if (it != g.end() && it->first == key) return it->second;
  return std::nullopt;
}

bool finset_contains(const Element& s, const Element& x) {
  const auto& m = s.as<el::FinSet>().members;
  return std::binary_search(m.begin(), m.end(), x);
}

bool atomset_contains(const Element& s, Atom a) {
  if (s.kind() == Kind::Cofin) {
    const auto& c = s.as<el::Cofin>().complement;
    return !std::binary_search(c.begin(), c.end(), a);
  }
  return finset_contains(s, mk_atom(a));
}

Element map_atoms(const Element& x, const std::function<Atom(Atom)>& f) {
  switch (x.kind()) {
    case Kind::Atom: return mk_atom(f(x.as<el::AtomV>().a));
    case Kind::Nat:
    case Kind::NatSet:
    case Kind::Universe: return x;
    case Kind::Pair: {
      const auto& p = x.as<el::Pair>();
      return pair(map_atoms(p.first, f), map_atoms(p.second, f));
    }
    case Kind::InL: return inl(map_atoms(x.as<el::InL>().v, f));
    case Kind::InR: return inr(map_atoms(x.as<el::InR>().v, f));
    case Kind::FinSet: {
      std::vector<Element> out;
      for (const auto& m : x.as<el::FinSet>().members) out.push_back(map_atoms(m, f));
      return finset(std::move(out));
    }
    case Kind::Cofin: {
      AtomSet c;
      for (Atom a : x.as<el::Cofin>().complement) c.insert(f(a));
      return cofin(c);
    }
    case Kind::InjTuple:
    case Kind::Tuple: {
      std::vector<Element> out;
      for (const auto& m : x.as<el::Seq>().entries) out.push_back(map_atoms(m, f));
      return tuple(std::move(out));
    }
    case Kind::AtomFn: {
      const auto& fn = x.as<el::AtomFn>();
      std::vector<std::pair<Atom, Element>> ex;
      for (const auto& [k, v] : fn.exceptions) ex.emplace_back(f(k), map_atoms(v, f));
      return atom_fn(std::move(ex), map_atoms(fn.tail, f));
    }
    case Kind::FinMap: {
      std::vector<std::pair<Element, Element>> g;
      for (const auto& [k, v] : x.as<el::FinMap>().graph) g.emplace_back(map_atoms(k, f), map_atoms(v, f));
      return finmap(std::move(g));
    }
    case Kind::AtomSeq: {
      const auto& q = x.as<el::AtomSeq>();
      std::vector<Atom> p, c;
      for (Atom a : q.prefix) p.push_back(f(a));
      for (Atom a : q.cycle) c.push_back(f(a));
      return atom_seq(std::move(p), std::move(c));
    }
    case Kind::SumSet: {
      const auto& s = x.as<el::SumSet>();
      return sum_set(map_atoms(s.left, f), map_atoms(s.right, f));
    }
  }
  return x;
}

Element act(const FinPermutation& pi, const Element& x) {
  if (pi.is_identity()) return x;
  return map_atoms(x, [&pi](Atom a) { return apply(pi, a); });
}

namespace {
void collect(const Element& x, AtomSet& out) {
  switch (x.kind()) {
    case Kind::Atom: out.insert(x.as<el::AtomV>().a); return;
    case Kind::Nat:
    case Kind::NatSet:
    case Kind::Universe: return;
    case Kind::Pair:
      collect(x.as<el::Pair>().first, out);
      collect(x.as<el::Pair>().second, out);
      return;
    case Kind::InL: collect(x.as<el::InL>().v, out); return;
    case Kind::InR: collect(x.as<el::InR>().v, out); return;
    case Kind::FinSet:
      for (const auto& m : x.as<el::FinSet>().members) collect(m, out);
      return;
    case Kind::Cofin:
      for (Atom a : x.as<el::Cofin>().complement) out.insert(a);
      return;
    case Kind::InjTuple:
    case Kind::Tuple:
      for (const auto& m : x.as<el::Seq>().entries) collect(m, out);
      return;
    case Kind::AtomFn: {
      const auto& fn = x.as<el::AtomFn>();
      for (const auto& [k, v] : fn.exceptions) {
        out.insert(k);
        collect(v, out);
      }
      AtomSet t;
      collect(fn.tail, t);
      t.erase(kHole);
      out.insert(t.begin(), t.end());
      return;
    }
    case Kind::FinMap:
      for (const auto& [k, v] : x.as<el::FinMap>().graph) {
        collect(k, out);
        collect(v, out);
      }
      return;
    case Kind::AtomSeq:
      for (Atom a : x.as<el::AtomSeq>().prefix) out.insert(a);
      for (Atom a : x.as<el::AtomSeq>().cycle) out.insert(a);
      return;
    case Kind::SumSet:
      collect(x.as<el::SumSet>().left, out);
      collect(x.as<el::SumSet>().right, out);
      return;
  }
}

std::uint64_t weight(const Element& x) {
  switch (x.kind()) {
    case Kind::Nat: return x.as<el::Nat>().n;
    case Kind::NatSet: return natset_size(x).value_or(0);
    case Kind::Pair: return std::max(weight(x.as<el::Pair>().first), weight(x.as<el::Pair>().second));
    case Kind::InL: return weight(x.as<el::InL>().v);
    case Kind::InR: return weight(x.as<el::InR>().v);
    case Kind::SumSet:
      return std::max(weight(x.as<el::SumSet>().left), weight(x.as<el::SumSet>().right));
    case Kind::FinSet: {
      std::uint64_t w = 0;
      for (const auto& m : x.as<el::FinSet>().members) w = std::max(w, weight(m));
      return w;
    }
    case Kind::InjTuple:
    case Kind::Tuple: {
      std::uint64_t w = 0;
      for (const auto& m : x.as<el::Seq>().entries) w = std::max(w, weight(m));
      return w;
    }
    case Kind::AtomFn: {
      const auto& fn = x.as<el::AtomFn>();
      std::uint64_t w = weight(fn.tail);
      for (const auto& kv : fn.exceptions) w = std::max(w, weight(kv.second));
      return w;
    }
    case Kind::FinMap: {
      std::uint64_t w = 0;
      for (const auto& [k, v] : x.as<el::FinMap>().graph) w = std::max({w, weight(k), weight(v)});
      return w;
    }
    default: return 0;
  }
}
}  // namespace

AtomSet support(const Element& x) {
  AtomSet s;
  collect(x, s);
  return s;
}

bool is_supported_by(const Element& x, const AtomSet& s) {
  for (Atom a : support(x))
    if (!s.count(a)) return false;
  return true;
}

std::size_t support_size(const Element& x) { return support(x).size(); }
std::uint64_t nat_weight(const Element& x) { return weight(x); }

namespace {
std::string bits(const std::vector<bool>& b) {
  std::string s;
  for (bool x : b) s += x ? '1' : '0';
  return s;
}
std::string atoms_str(const std::vector<Atom>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}
}  // namespace

std::string to_string(const Element& x) {
  switch (x.kind()) {
    case Kind::Atom: return to_string(x.as<el::AtomV>().a);
    case Kind::Nat: return std::to_string(x.as<el::Nat>().n);
    case Kind::Pair: return "<" + to_string(x.as<el::Pair>().first) + "," + to_string(x.as<el::Pair>().second) + ">";
    case Kind::InL: return "inl(" + to_string(x.as<el::InL>().v) + ")";
    case Kind::InR: return "inr(" + to_string(x.as<el::InR>().v) + ")";
    case Kind::FinSet: {
      std::string s = "{";
      const auto& m = x.as<el::FinSet>().members;
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + to_string(m[i]);
      return s + "}";
    }
    case Kind::Cofin: return "cofin{" + atoms_str(x.as<el::Cofin>().complement) + "}";
    case Kind::InjTuple:
    case Kind::Tuple: {
      std::string s = "(";
      const auto& m = x.as<el::Seq>().entries;
      for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + to_string(m[i]);
      return s + ")";
    }
    case Kind::AtomFn: {
      std::string s = "fn{";
      for (const auto& [k, v] : x.as<el::AtomFn>().exceptions) s += to_string(k) + "->" + to_string(v) + ",";
      return s + "_->" + to_string(x.as<el::AtomFn>().tail) + "}";
    }
    case Kind::FinMap: {
      std::string s = "map{";
      const auto& g = x.as<el::FinMap>().graph;
      for (std::size_t i = 0; i < g.size(); ++i)
        s += (i ? "," : "") + to_string(g[i].first) + "->" + to_string(g[i].second);
      return s + "}";
    }
    case Kind::AtomSeq:
      return "seq(" + atoms_str(x.as<el::AtomSeq>().prefix) + ";" + atoms_str(x.as<el::AtomSeq>().cycle) + ")";
    case Kind::NatSet:
      return "nats(" + bits(x.as<el::NatSet>().prefix) + ";" + bits(x.as<el::NatSet>().cycle) + ")";
    case Kind::SumSet:
      return "split(" + to_string(x.as<el::SumSet>().left) + "," + to_string(x.as<el::SumSet>().right) + ")";
    case Kind::Universe: return "U[" + to_string(x.as<el::Universe>().expr) + "]";
  }
  return "?";
}

namespace {

class ElementParser {
 public:
  explicit ElementParser(std::string_view t) : t_(t) {}

  Element parse() {
    Element e = element();
    skip();
    if (i_ != t_.size()) throw ParseError("unexpected trailing input", i_);
    return e;
  }

 private:
  std::string_view t_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < t_.size() && t_[i_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++i_;
      return true;
    }
    return false;
  }
  bool eat(std::string_view s) {
    skip();
    if (t_.substr(i_, s.size()) == s) {
      i_ += s.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i_);
  }
  std::string word() {
    skip();
    std::size_t s = i_;
    while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_')) ++i_;
    return std::string(t_.substr(s, i_ - s));
  }

  Atom atom_or_hole() {
    skip();
    std::size_t s = i_;
    std::string w = word();
    if (w == "_") return kHole;
    try {
      return parse_atom(w);
    } catch (const ParseError&) {
      throw ParseError("expected atom", s);
    }
  }

  std::vector<Element> list(char close) {
    std::vector<Element> out;
    if (eat(close)) return out;
    do out.push_back(element());
    while (eat(','));
    expect(close);
    return out;
  }

  std::vector<Atom> atom_list(char stop) {
    std::vector<Atom> out;
    if (peek(stop)) return out;
    do out.push_back(atom_or_hole());
    while (eat(','));
    return out;
  }

  std::vector<bool> bit_list() {
    skip();
    std::vector<bool> out;
    while (i_ < t_.size() && (t_[i_] == '0' || t_[i_] == '1')) out.push_back(t_[i_++] == '1');
    return out;
  }

  Element element() {
    skip();
    if (i_ >= t_.size()) throw ParseError("unexpected end of input", i_);
    char c = t_[i_];
    if (c == '{') {
      ++i_;
      return finset(list('}'));
    }
    if (c == '(') {
      ++i_;
      return tuple(list(')'));
    }
    if (c == '<') {
      ++i_;
      Element a = element();
      expect(',');
      Element b = element();
      expect('>');
      return pair(a, b);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = 0;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_])))
        n = n * 10 + static_cast<std::uint64_t>(t_[i_++] - '0');
      return nat(n);
    }
    std::size_t start = i_;
    if (eat("cofin{")) {
      auto v = atom_list('}');
      expect('}');
      return cofin(AtomSet(v.begin(), v.end()));
    }
    if (eat("inl(")) {
      Element v = element();
      expect(')');
      return inl(v);
    }
    if (eat("inr(")) {
      Element v = element();
      expect(')');
      return inr(v);
    }
    if (eat("fn{")) {
      std::vector<std::pair<Atom, Element>> ex;
      for (;;) {
        Atom k = atom_or_hole();
        if (!eat("->")) throw ParseError("expected '->'", i_);
        Element v = element();
        if (k == kHole) {
          expect('}');
          return atom_fn(std::move(ex), v);
        }
        ex.emplace_back(k, v);
        expect(',');
      }
    }
    if (eat("map{")) {
      std::vector<std::pair<Element, Element>> g;
      if (!eat('}')) {
        do {
          Element k = element();
          if (!eat("->")) throw ParseError("expected '->'", i_);
          g.emplace_back(k, element());
        } while (eat(','));
        expect('}');
      }
      return finmap(std::move(g));
    }
    if (eat("seq(")) {
      auto p = atom_list(';');
      expect(';');
      auto cy = atom_list(')');
      expect(')');
      if (cy.empty()) throw ParseError("sequence cycle must be nonempty", i_);
      return atom_seq(p, cy);
    }
    if (eat("nats(")) {
      auto p = bit_list();
      expect(';');
      auto cy = bit_list();
      expect(')');
      if (cy.empty()) throw ParseError("natural set cycle must be nonempty", i_);
      return nat_set(p, cy);
    }
    if (eat("split(")) {
      Element l = element();
      expect(',');
      Element r = element();
      expect(')');
      return sum_set(l, r);
    }
    if (eat("U[")) {
      std::size_t s = i_;
      int depth = 1;
      while (i_ < t_.size() && depth) {
        if (t_[i_] == '[') ++depth;
        if (t_[i_] == ']') --depth;
        ++i_;
      }
      if (depth) throw ParseError("unterminated universe literal", s);
      try {
        return universe(parse_setexpr(t_.substr(s, i_ - 1 - s)));
      } catch (const ParseError& e) {
        throw ParseError("bad universe expression", s + e.pos);
      }
    }
    Atom a = atom_or_hole();
    if (a == kHole) return mk_atom(kHole);
    (void)start;
    return mk_atom(a);
  }
};

}  // namespace

Element parse_element(std::string_view text) { return ElementParser(text).parse(); }

}  // namespace fsmkit
