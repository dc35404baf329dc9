#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "fsmkit/cardinality.hpp"
#include "fsmkit/checks.hpp"
#include "fsmkit/infinity.hpp"
#include "fsmkit/nominal.hpp"
#include "fsmkit/universes.hpp"

using namespace fsmkit;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t pool_bonus = 0;
  std::size_t max_support = 2;
  std::size_t prefix = 20;
  std::string format = "markdown";

  bool json() const { return format == "json"; }
  InfinityConfig infinity() const { return {prefix, max_support, seed, pool_bonus}; }
};

AtomSet parse_atoms(const std::string& text) {
  AtomSet s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) s.insert(parse_atom(item));
  return s;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_support(const RunConfig& cfg, const std::string& text) {
  Element x = parse_element(text);
  std::mt19937_64 rng(cfg.seed);
  auto r = verify_least_support(x, support(x), 16, rng);
  if (cfg.json()) {
    json ce = json::array();
    for (auto [a, b] : r.counterexamples) ce.push_back({to_string(a), to_string(b)});
    print({{"element", to_json(x)},
           {"support", atoms_json(r.support)},
           {"verified", r.verified},
           {"probes", r.probes_run},
           {"counterexamples", ce}});
  } else {
    std::cout << to_string(r.support) << ", " << (r.verified ? "verified" : "NOT verified") << "\n";
  }
  return r.verified ? 0 : 1;
}

int cmd_table(const RunConfig& cfg) {
  auto t = build_table(cfg.infinity());
  if (cfg.json()) print(to_json(t));
  else {
    std::cout << render_markdown(t);
    for (const auto& n : t.notes) std::cout << "\nnote: " << n;
    if (!t.notes.empty()) std::cout << "\n";
  }
  if (t.inconclusive) return 3;
  if (t.mismatches) return 2;
  return 0;
}

int cmd_check(const RunConfig& cfg, std::size_t trials) {
  CheckOptions o;
  o.seed = cfg.seed;
  o.max_support = cfg.max_support;
  o.prefix = cfg.prefix;
  o.pool_bonus = cfg.pool_bonus;
  o.trials = trials;
  auto groups = run_checks(o);
  bool ok = true;
  json out = json::array();
  for (const auto& g : groups) {
    ok = ok && g.ok();
    if (cfg.json()) out.push_back(to_json(g));
    else {
      std::cout << (g.ok() ? "PASS " : "FAIL ") << g.name << ": " << g.passed << " passed, " << g.failed
                << " failed\n";
      for (const auto& f : g.failures) std::cout << "  " << f << "\n";
    }
  }
  if (cfg.json()) print({{"seed", cfg.seed}, {"ok", ok}, {"groups", out}});
  return ok ? 0 : 1;
}

Carrier keys_of(const Element& m) {
  std::vector<Element> ks;
  for (const auto& [k, v] : m.as<el::FinMap>().graph) ks.push_back(k);
  return Carrier::finite(ks);
}

int cmd_csb(const RunConfig& cfg, const std::string& ftext, const std::string& gtext) {
  Element fm = parse_element(ftext), gm = parse_element(gtext);
  if (fm.kind() != Kind::FinMap || gm.kind() != Kind::FinMap)
    throw PreconditionError("csb takes two map{...} literals");
  auto X = keys_of(fm), Y = keys_of(gm);
  auto f = finmap_witness(X, Y, fm.as<el::FinMap>().graph);
  auto g = finmap_witness(Y, X, gm.as<el::FinMap>().graph);
  auto r = csb(f, g);
  std::vector<std::pair<Element, Element>> graph;
  for (const auto& x : *X.elements) graph.emplace_back(x, eval(r.h, x));
  Element h = finmap(graph);
  if (cfg.json()) {
    json T = json::array();
    for (const auto& t : r.T) T.push_back(to_json(t));
    auto j = to_json(r.h);
    j["graph"] = to_json(h);
    print({{"h", j},
           {"T", T},
           {"iterations", r.iterations},
           {"fixed_point_ok", r.fixed_point_ok},
           {"support_ok", r.support_ok}});
  } else {
    std::cout << "h = " << to_string(h) << "\nsupport " << to_string(r.h.support) << ", " << r.iterations
              << " iterations\n";
  }
  return r.fixed_point_ok && r.support_ok ? 0 : 1;
}

Want parse_want(const std::string& w) {
  if (w == "injective") return Want::Injective;
  if (w == "surjective") return Want::Surjective;
  if (w == "bijective") return Want::Bijective;
  throw CLI::ValidationError("--want", "expected injective, surjective or bijective");
}

int cmd_find_map(const RunConfig& cfg, const std::string& x, const std::string& y, const std::string& s,
                 const std::string& want) {
  auto r = find_supported_map(parse_setexpr(x), parse_setexpr(y), parse_atoms(s), parse_want(want),
                              {cfg.pool_bonus});
  json rec = r.record;
  if (r.witness && !rec.contains("witness")) rec["witness"] = to_json(*r.witness);
  if (cfg.json()) print(rec);
  else std::cout << outcome_name(r.outcome) << (r.reason.empty() ? "" : ": " + r.reason) << "\n";
  return r.outcome == SearchOutcome::Inconclusive ? 3 : 0;
}

int cmd_rel(const RunConfig& cfg, const std::string& x, const std::string& y, const std::string& kind) {
  RelKind k = kind == "leq" ? RelKind::Leq : kind == "leqstar" ? RelKind::LeqStar : RelKind::Eq;
  if (kind != "leq" && kind != "leqstar" && kind != "eq")
    throw CLI::ValidationError("--kind", "expected leq, leqstar or eq");
  auto r = decide_relation(k, parse_setexpr(x), parse_setexpr(y), cfg.max_support, {cfg.pool_bonus});
  if (!r) {
    if (cfg.json()) print({{"relation", kind}, {"left", x}, {"right", y}, {"inconclusive", true}});
    else std::cout << "inconclusive\n";
    return 3;
  }
  if (cfg.json()) print(to_json(*r));
  else
    std::cout << (r->holds() ? "holds" : "refuted") << "\n";
  return 0;
}

int cmd_count(const RunConfig& cfg, const std::string& x, const std::string& s) {
  auto e = parse_setexpr(x);
  AtomSet S = parse_atoms(s);
  auto c = count_supported(e, S);
  if (cfg.json())
    print({{"universe", to_string(e)}, {"support", atoms_json(S)}, {"count", c ? json(*c) : json("infinite")}});
  else
    std::cout << (c ? std::to_string(*c) : "infinite") << "\n";
  return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& x) {
  auto row = classify(parse_setexpr(x), cfg.infinity());
  bool inconclusive = false;
  json cells = json::object();
  for (const auto& [n, v] : row.verdicts) {
    inconclusive = inconclusive || v.value == Value::Inconclusive;
    if (cfg.json()) cells[std::string(notion_name(n))] = to_json(v);
    else
      std::cout << notion_name(n) << ": " << value_name(v.value) << " (" << v.method << ")\n";
  }
  if (cfg.json()) print({{"universe", to_json(row.expr)}, {"verdicts", cells}});
  return inconclusive ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fsmkit: finitely supported sets over an infinite atom universe"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  cfg.seed = seed_from_env(1);
  app.add_option("--seed", cfg.seed, "probe seed (FSMKIT_SEED when unset)");
  app.add_option("--max-support", cfg.max_support, "largest |S| tried by refutation ladders");
  app.add_option("--prefix", cfg.prefix, "length of checked witness prefixes")->check(CLI::PositiveNumber);
  app.add_option("--pool-bonus", cfg.pool_bonus, "extra fresh atoms for the orbit search");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "markdown"}));

  std::string a, b, sup, want = "injective", kind = "leq";
  std::size_t trials = 10'000;
  std::function<int()> run;

  auto* sc = app.add_subcommand("support", "least support of an element literal");
  sc->add_option("element", a)->required();
  sc->callback([&] { run = [&] { return cmd_support(cfg, a); }; });

  app.add_subcommand("table", "the sixteen-row classification table")->callback([&] {
    run = [&] { return cmd_table(cfg); };
  });

  auto* ck = app.add_subcommand("check", "run the invariant suites");
  ck->add_option("--trials", trials, "random elements per equivariance run");
  ck->callback([&] { run = [&] { return cmd_check(cfg, trials); }; });

  auto* cs = app.add_subcommand("csb", "Cantor-Schroeder-Bernstein on two finite injections");
  cs->add_option("f", a, "map{x->y,...} from X to Y")->required();
  cs->add_option("g", b, "map{y->x,...} from Y to X")->required();
  cs->callback([&] { run = [&] { return cmd_csb(cfg, a, b); }; });

  auto* fm = app.add_subcommand("find-map", "search for an S-supported map X -> Y");
  fm->add_option("x", a)->required();
  fm->add_option("y", b)->required();
  fm->add_option("--support", sup, "atoms of S, comma separated");
  fm->add_option("--want", want)->check(CLI::IsMember({"injective", "surjective", "bijective"}));
  fm->callback([&] { run = [&] { return cmd_find_map(cfg, a, b, sup, want); }; });

  auto* rl = app.add_subcommand("rel", "decide X <= Y, X <=* Y or X = Y up to --max-support");
  rl->add_option("x", a)->required();
  rl->add_option("y", b)->required();
  rl->add_option("--kind", kind)->check(CLI::IsMember({"leq", "leqstar", "eq"}));
  rl->callback([&] { run = [&] { return cmd_rel(cfg, a, b, kind); }; });

  auto* co = app.add_subcommand("count", "number of S-supported elements");
  co->add_option("x", a)->required();
  co->add_option("--support", sup, "atoms of S, comma separated");
  co->callback([&] { run = [&] { return cmd_count(cfg, a, sup); }; });

  auto* cl = app.add_subcommand("classify", "all infinity verdicts for one universe");
  cl->add_option("x", a)->required();
  cl->callback([&] { run = [&] { return cmd_classify(cfg, a); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    return run();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
