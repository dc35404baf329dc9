#include "fsmkit/json_io.hpp"

#include <stdexcept>

namespace fsmkit {

namespace {

json atom_id(Atom a) {
  if (a == kHole) return "_";
  return a.id;
}

Atom atom_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "_") return kHole;
  return Atom{j.get<std::uint64_t>()};
}

std::string bit_string(const std::vector<bool>& b) {
  std::string s;
  for (bool x : b) s += x ? '1' : '0';
  return s;
}

std::vector<bool> bits_from(const json& j) {
  std::vector<bool> out;
  for (char c : j.get<std::string>()) {
    if (c != '0' && c != '1') throw std::invalid_argument("natset bits must be 0 or 1");
    out.push_back(c == '1');
  }
  return out;
}

const char* setkind_name(SetKind k) {
  switch (k) {
    case SetKind::Atoms: return "atoms";
    case SetKind::Naturals: return "naturals";
    case SetKind::Prod: return "prod";
    case SetKind::Sum: return "sum";
    case SetKind::FinPow: return "finpow";
    case SetKind::CofinPow: return "cofinpow";
    case SetKind::FsPow: return "fspow";
    case SetKind::Fn: return "fn";
    case SetKind::InjTuples: return "injtuples";
    case SetKind::Tuples: return "tuples";
    case SetKind::NSized: return "nsized";
  }
  return "?";
}

}  // namespace

json atoms_json(const AtomSet& s) {
  json out = json::array();
  for (Atom a : s) out.push_back(to_string(a));
  return out;
}

json to_json(const Element& x) {
  json j;
  j["kind"] = std::string(kind_name(x.kind()));
  switch (x.kind()) {
    case Kind::Atom: j["id"] = atom_id(x.as<el::AtomV>().a); break;
    case Kind::Nat: j["value"] = x.as<el::Nat>().n; break;
    case Kind::Pair:
      j["first"] = to_json(x.as<el::Pair>().first);
      j["second"] = to_json(x.as<el::Pair>().second);
      break;
    case Kind::InL: j["value"] = to_json(x.as<el::InL>().v); break;
    case Kind::InR: j["value"] = to_json(x.as<el::InR>().v); break;
    case Kind::FinSet:
      j["members"] = json::array();
      for (const auto& m : x.as<el::FinSet>().members) j["members"].push_back(to_json(m));
      break;
    case Kind::Cofin:
      j["complement"] = json::array();
      for (Atom a : x.as<el::Cofin>().complement) j["complement"].push_back(atom_id(a));
      break;
    case Kind::InjTuple:
    case Kind::Tuple:
      j["entries"] = json::array();
      for (const auto& m : x.as<el::Seq>().entries) j["entries"].push_back(to_json(m));
      break;
    case Kind::AtomFn:
      j["exceptions"] = json::array();
      for (const auto& [k, v] : x.as<el::AtomFn>().exceptions)
        j["exceptions"].push_back({{"key", atom_id(k)}, {"value", to_json(v)}});
      j["tail"] = to_json(x.as<el::AtomFn>().tail);
      break;
    case Kind::FinMap:
      j["graph"] = json::array();
      for (const auto& [k, v] : x.as<el::FinMap>().graph) j["graph"].push_back({to_json(k), to_json(v)});
      break;
    case Kind::AtomSeq:
      j["prefix"] = json::array();
      j["cycle"] = json::array();
      for (Atom a : x.as<el::AtomSeq>().prefix) j["prefix"].push_back(atom_id(a));
      for (Atom a : x.as<el::AtomSeq>().cycle) j["cycle"].push_back(atom_id(a));
      break;
    case Kind::NatSet:
      j["prefix"] = bit_string(x.as<el::NatSet>().prefix);
      j["cycle"] = bit_string(x.as<el::NatSet>().cycle);
      break;
    case Kind::SumSet:
      j["left"] = to_json(x.as<el::SumSet>().left);
      j["right"] = to_json(x.as<el::SumSet>().right);
      break;
    case Kind::Universe: j["expr"] = to_string(x.as<el::Universe>().expr); break;
  }
  return j;
}

Element element_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "atom") return mk_atom(atom_from(j.at("id")));
  if (k == "nat") return nat(j.at("value").get<std::uint64_t>());
  if (k == "pair") return pair(element_from_json(j.at("first")), element_from_json(j.at("second")));
  if (k == "inl") return inl(element_from_json(j.at("value")));
  if (k == "inr") return inr(element_from_json(j.at("value")));
  if (k == "finset") {
    std::vector<Element> v;
    for (const auto& m : j.at("members")) v.push_back(element_from_json(m));
    return finset(std::move(v));
  }
  if (k == "cofin") {
    AtomSet c;
    for (const auto& a : j.at("complement")) c.insert(atom_from(a));
    return cofin(c);
  }
  if (k == "injtuple" || k == "tuple") {
    std::vector<Element> v;
    for (const auto& m : j.at("entries")) v.push_back(element_from_json(m));
    return tuple(std::move(v));
  }
  if (k == "atomfn") {
    std::vector<std::pair<Atom, Element>> ex;
    for (const auto& e : j.at("exceptions")) ex.emplace_back(atom_from(e.at("key")), element_from_json(e.at("value")));
    return atom_fn(std::move(ex), element_from_json(j.at("tail")));
  }
  if (k == "finmap") {
    std::vector<std::pair<Element, Element>> g;
    for (const auto& e : j.at("graph")) g.emplace_back(element_from_json(e.at(0)), element_from_json(e.at(1)));
    return finmap(std::move(g));
  }
  if (k == "atomseq") {
    std::vector<Atom> p, c;
    for (const auto& a : j.at("prefix")) p.push_back(atom_from(a));
    for (const auto& a : j.at("cycle")) c.push_back(atom_from(a));
    return atom_seq(p, c);
  }
  if (k == "natset") return nat_set(bits_from(j.at("prefix")), bits_from(j.at("cycle")));
  if (k == "sumset") return sum_set(element_from_json(j.at("left")), element_from_json(j.at("right")));
  if (k == "universe") return universe(parse_setexpr(j.at("expr").get<std::string>()));
  throw std::invalid_argument("unknown element kind '" + k + "'");
}

json to_json(const SetExpr& e) {
  json j{{"kind", setkind_name(e.kind())}};
  if (e.num_kids() && e.kind() != SetKind::CofinPow) {
    j["args"] = json::array();
    for (std::size_t i = 0; i < e.num_kids(); ++i) j["args"].push_back(to_json(e.kid(i)));
  }
  if (e.kind() == SetKind::NSized) j["n"] = e.n();
  if (e.kind() == SetKind::InjTuples) j["nonempty"] = e.n() != 0;
  j["text"] = to_string(e);
  return j;
}

SetExpr setexpr_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  auto arg = [&](std::size_t i) { return setexpr_from_json(j.at("args").at(i)); };
  if (k == "atoms") return u::atoms();
  if (k == "naturals") return u::naturals();
  if (k == "prod") return u::prod(arg(0), arg(1));
  if (k == "sum") return u::sum(arg(0), arg(1));
  if (k == "finpow") return u::fin_pow(arg(0));
  if (k == "cofinpow") return u::cofin_pow();
  if (k == "fspow") return u::fs_pow(arg(0));
  if (k == "fn") return u::fn(arg(0), arg(1));
  if (k == "injtuples")
    return j.value("nonempty", false) ? u::inj_tuples_nonempty(arg(0)) : u::inj_tuples(arg(0));
  if (k == "tuples") return u::tuples(arg(0));
  if (k == "nsized") return u::nsized(arg(0), j.at("n").get<std::uint64_t>());
  throw std::invalid_argument("unknown universe kind '" + k + "'");
}

}  // namespace fsmkit
