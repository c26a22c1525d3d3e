// tcs: command-line front end for the invariant pipeline.
//
// Exit codes: 0 success, 1 I/O or usage error, 2 validation failure, 3 mismatch.

#include "digest.hpp"
#include "tcs/tcs.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace tcs;
using report::Json;

namespace {

enum Exit { kOk = 0, kIo = 1, kValidation = 2, kMismatch = 3 };

struct Options {
  std::string catalog = TCS_DEFAULT_CATALOG;
  bool json = false;
  std::vector<std::string> argv;
};

/// Common envelope: command echo, input digests, result, warnings.
class RunReport {
 public:
  explicit RunReport(const Options& opt) {
    Json cmd = Json::array();
    for (const auto& a : opt.argv) cmd.push_back(a);
    doc_["command"] = cmd;
    doc_["inputs"] = Json::object();
    doc_["result"] = nullptr;
    doc_["warnings"] = Json::array();
  }

  void input(const std::string& path, const std::string& text) { doc_["inputs"][path] = sha256_hex(text); }
  void warn(const std::string& w) { doc_["warnings"].push_back(w); }
  Json& result() { return doc_["result"]; }
  const Json& doc() const { return doc_; }

 private:
  Json doc_;
};

int fail(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  switch (e.code()) {
    case ErrorCode::InvalidInput:
    case ErrorCode::ParseError: return kIo;
    default: return kValidation;
  }
}

std::vector<blocks::SemiFanoFamily> read_catalog(const Options& opt, RunReport& rep) {
  const std::string text = blocks::read_text_file(opt.catalog);
  rep.input(opt.catalog, text);
  return blocks::parse_catalog(text);
}

void emit(const Options& opt, const RunReport& rep, const std::function<void(const Json&)>& human) {
  if (opt.json) {
    std::cout << rep.doc().dump(2) << "\n";
    return;
  }
  human(rep.doc()["result"]);
  for (const auto& w : rep.doc()["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
}

std::string residue(const Json& r) { return r["value"].dump() + " mod " + r["modulus"].dump(); }

void print_invariants(const Json& inv) {
  std::cout << "  b2 = " << inv["b2"].dump() << ", b3 = " << inv["b3"].dump()
            << ", torsion-free = " << (inv["torsion_free"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "  m = " << inv["m"].dump() << " (m+ = " << inv["m_plus"].dump() << ", m- = " << inv["m_minus"].dump()
            << ")\n";
  std::cout << "  nu = " << residue(inv["nu"]) << ", xi = " << residue(inv["xi"]) << ", mu = "
            << (inv["mu"]["vacuous"].get<bool>() ? std::string("vacuous") : residue(inv["mu"])) << "\n";
}

// ---- catalog ---------------------------------------------------------------------------

int cmd_catalog(const Options& opt, const std::string& action, const std::string& id) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  if (action == "list") {
    Json list = Json::array();
    for (const auto& y : cat) list.push_back({{"id", y.id}, {"name", y.name}, {"picard_rank", y.rank()}});
    rep.result() = list;
    emit(opt, rep, [](const Json& r) {
      for (const auto& e : r) std::cout << e["id"].get<std::string>() << "  " << e["name"].get<std::string>() << "\n";
    });
    return kOk;
  }
  if (action == "show") {
    rep.result() = blocks::family_to_json(blocks::find_family(cat, id));
    emit(opt, rep, [](const Json& r) { std::cout << r.dump(2) << "\n"; });
    return kOk;
  }
  const auto v = blocks::validate_catalog(cat);
  Json issues = Json::array();
  for (const auto& i : v.issues) issues.push_back({{"family", i.family_id}, {"rule", i.rule}, {"message", i.message}});
  for (const auto& w : v.warnings) rep.warn(w);
  rep.result() = {{"ok", v.ok()}, {"families", cat.size()}, {"issues", issues}};
  emit(opt, rep, [](const Json& r) {
    for (const auto& i : r["issues"])
      std::cout << i["family"].get<std::string>() << ": [" << i["rule"].get<std::string>() << "] "
                << i["message"].get<std::string>() << "\n";
    std::cout << (r["ok"].get<bool>() ? "valid" : "invalid") << " (" << r["families"].dump() << " families)\n";
  });
  return v.ok() ? kOk : kValidation;
}

// ---- block -----------------------------------------------------------------------------

int cmd_block(const Options& opt, const std::string& id) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  const auto z = blocks::derive_block(blocks::find_family(cat, id));
  rep.result() = blocks::block_to_json(z);
  emit(opt, rep, [](const Json& r) {
    std::cout << "block " << r["family_id"].get<std::string>() << ": N = " << r["N"].dump()
              << ", c2Z = " << r["c2Z"].dump() << ", genus = " << r["genus"].dump() << ", chiZ = " << r["chiZ"].dump()
              << ", b3Z = " << r["b3Z"].dump() << "\n";
  });
  return kOk;
}

// ---- match -----------------------------------------------------------------------------

int cmd_match(const Options& opt, const std::string& plus_id, const std::string& minus_id, long long bound) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  const auto plus = blocks::derive_block(blocks::find_family(cat, plus_id));
  const auto minus = blocks::derive_block(blocks::find_family(cat, minus_id));
  const auto found = matching::search_gluings(plus, minus, bound);
  Json list = Json::array();
  for (const auto& cfg : found.configurations) {
    Json c = report::to_json(cfg);
    c["derived"] = report::to_json(matching::derived_lattices(cfg));
    list.push_back(c);
  }
  rep.result() = {{"plus", plus_id},
                  {"minus", minus_id},
                  {"bound", bound},
                  {"candidates", found.candidates},
                  {"configurations", list}};
  rep.warn("only gluing blocks with entries in [-" + std::to_string(bound) + ", " + std::to_string(bound) +
           "] were examined");
  emit(opt, rep, [](const Json& r) {
    std::cout << r["configurations"].size() << " configurations among " << r["candidates"].dump()
              << " candidates (bound " << r["bound"].dump() << ")\n";
    for (const auto& c : r["configurations"])
      std::cout << "  D = " << c["D"].dump() << "  (" << c["kind"].get<std::string>() << ")\n";
  });
  return kOk;
}

// ---- invariants ------------------------------------------------------------------------

Json evaluate_config(const std::vector<blocks::SemiFanoFamily>& cat, const std::string& path, RunReport& rep,
                     invariants::TcsInvariants* out = nullptr) {
  const std::string text = blocks::read_text_file(path);
  rep.input(path, text);
  const auto cfg = report::build_configuration(cat, report::parse_config(text));
  const auto ev = invariants::evaluate(cfg);
  const auto gen = matching::genericity_check(cfg, ev.derived);
  if (!gen.pass()) rep.warn(path + ": genericity hypotheses are not all met");
  for (const auto* g : {&gen.plus, &gen.minus})
    for (const auto& n : g->notes) rep.warn(path + ": " + n);
  if (out) *out = ev.invariants;
  Json j = report::evaluation_json(cfg, ev, gen);
  j["file"] = path;
  return j;
}

int cmd_invariants(const Options& opt, const std::string& config) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  rep.result() = evaluate_config(cat, config, rep);
  emit(opt, rep, [](const Json& r) {
    std::cout << r["configuration"]["plus"].get<std::string>() << " / " << r["configuration"]["minus"].get<std::string>()
              << ", D = " << r["configuration"]["D"].dump() << "\n";
    print_invariants(r["invariants"]);
    std::cout << "  genericity: " << (r["genericity"]["pass"].get<bool>() ? "pass" : "fail") << " ("
              << r["genericity"]["plus"]["rule"].get<std::string>() << ", "
              << r["genericity"]["minus"]["rule"].get<std::string>() << ")\n";
  });
  return kOk;
}

// ---- reproduce-table -------------------------------------------------------------------

int cmd_reproduce(const Options& opt) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  const auto t = report::reproduce_table(cat);
  rep.result() = report::to_json(t);
  emit(opt, rep, [&](const Json&) {
    for (const auto& r : t.rows) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": b3 = " << r.invariants.b3 << ", m = " << r.invariants.m
                << ", xi = " << r.invariants.xi << " mod " << r.invariants.xi_modulus << "\n";
      for (const auto& d : r.diffs)
        std::cout << "  " << d.cell << ": expected " << d.expected << ", got " << d.actual << "\n";
    }
  });
  return t.pass() ? kOk : kMismatch;
}

// ---- classify --------------------------------------------------------------------------

int cmd_classify(const Options& opt, const std::vector<std::string>& configs) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  std::vector<std::pair<std::string, invariants::TcsInvariants>> results;
  Json evaluated = Json::array();
  for (const auto& path : configs) {
    invariants::TcsInvariants inv;
    evaluated.push_back(evaluate_config(cat, path, rep, &inv));
    results.emplace_back(path, inv);
  }
  const auto c = invariants::classify(results);
  Json groups = Json::array();
  for (const auto& g : c.groups)
    groups.push_back({{"b3", report::to_json(g.b3)},
                      {"m", report::to_json(g.m)},
                      {"mu", report::residue_json(g.mu, g.mu_modulus)},
                      {"members", g.members}});
  Json pairs = Json::array();
  for (const auto& p : c.pairs)
    pairs.push_back({{"first", p.first}, {"second", p.second}, {"verdict", invariants::to_string(p.verdict)}});
  rep.result() = {{"configurations", evaluated}, {"groups", groups}, {"pairs", pairs}};
  emit(opt, rep, [](const Json& r) {
    for (const auto& g : r["groups"]) {
      std::cout << "b3 = " << g["b3"].dump() << ", m = " << g["m"].dump() << ", mu = " << residue(g["mu"]) << ":";
      for (const auto& m : g["members"]) std::cout << " " << m.get<std::string>();
      std::cout << "\n";
    }
    for (const auto& p : r["pairs"])
      std::cout << p["first"].get<std::string>() << " vs " << p["second"].get<std::string>() << ": "
                << p["verdict"].get<std::string>() << "\n";
    if (r["pairs"].empty()) std::cout << "no pairs share (b3, m, mu)\n";
  });
  return kOk;
}

// ---- property-check --------------------------------------------------------------------

int cmd_property(const Options& opt, unsigned long long seed, int trials) {
  RunReport rep(opt);
  const auto cat = read_catalog(opt, rep);
  std::mt19937_64 rng(seed);
  Json checks = Json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, int cases, const std::string& detail) {
    all = all && ok;
    Json j = {{"check", name}, {"pass", ok}, {"cases", cases}};
    if (!ok) j["detail"] = detail;
    checks.push_back(j);
  };
  for (const auto& row : reference::table()) {
    const auto cfg = report::build_configuration(cat, {row.plus, row.minus, row.D});
    const auto base = invariants::evaluate(cfg).invariants;
    bool ok = true;
    std::string detail;
    for (int t = 0; t < trials; ++t) {
      const auto r = invariants::xi_tcs(cfg, base.m, invariants::XiLiftChoice{&rng, 6});
      if (r.xi != base.xi) {
        ok = false;
        detail = "xi " + r.xi.str() + " vs " + base.xi.str();
      }
    }
    record("xi-choice-independence/" + row.name, ok, trials, detail);
    const auto swapped = invariants::evaluate(matching::swap_sides(cfg)).invariants;
    record("side-swap/" + row.name,
           swapped.b3 == base.b3 && swapped.m == base.m && swapped.xi == base.xi && swapped.b2 == base.b2, 1, "");
  }
  std::size_t smith_ok = 0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    IntMatrix a(r, c);
    std::uniform_int_distribution<int> dist(-20, 20);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = dist(rng);
    const auto snf = lattice::smith_normal_form(a);
    bool ok = snf.U * a * snf.V == snf.S && abs_value(lattice::determinant(snf.U)) == 1 &&
              abs_value(lattice::determinant(snf.V)) == 1;
    const auto d = snf.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i] != 0 && d[i + 1] % d[i] != 0) ok = false;
    smith_ok += ok;
  }
  record("smith-identities", smith_ok == static_cast<std::size_t>(trials), trials, "");
  rep.result() = {{"seed", seed}, {"trials", trials}, {"pass", all}, {"checks", checks}};
  emit(opt, rep, [](const Json& r) {
    for (const auto& c : r["checks"])
      std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << " ("
                << c["cases"].dump() << " cases)\n";
  });
  return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) opt.argv.push_back(argv[i]);

  CLI::App app{"Exact invariants of twisted connected sum G2-manifolds"};
  app.require_subcommand(1);
  app.add_option("--catalog", opt.catalog, "semi-Fano catalog (JSON)");
  app.add_flag("--json", opt.json, "machine-readable output");

  std::string action, id, plus_id, minus_id, config;
  long long bound = 3;
  std::vector<std::string> configs;
  unsigned long long seed = 1;
  int trials = 100;

  auto* catalog = app.add_subcommand("catalog", "list, show or validate the catalog");
  catalog->add_option("action", action, "list | show | validate")->required()->check(CLI::IsMember({"list", "show", "validate"}));
  catalog->add_option("id", id, "family id for show");

  auto* block = app.add_subcommand("block", "derive a building block");
  std::string block_action;
  block->add_option("action", block_action, "derive")->required()->check(CLI::IsMember({"derive"}));
  block->add_option("id", id, "family id")->required();

  auto* match = app.add_subcommand("match", "search gluing configurations");
  std::string match_action;
  match->add_option("action", match_action, "search")->required()->check(CLI::IsMember({"search"}));
  match->add_option("plus", plus_id)->required();
  match->add_option("minus", minus_id)->required();
  match->add_option("--bound", bound, "entry bound for D")->check(CLI::NonNegativeNumber);

  auto* inv = app.add_subcommand("invariants", "evaluate one configuration");
  inv->add_option("--config", config, "configuration file")->required();

  auto* repro = app.add_subcommand("reproduce-table", "recompute the reference table");

  auto* cls = app.add_subcommand("classify", "group configurations by invariants");
  cls->add_option("--configs", configs, "configuration files")->required();

  auto* prop = app.add_subcommand("property-check", "randomized property checks");
  prop->add_option("--seed", seed, "random seed");
  prop->add_option("--trials", trials, "trials per check")->check(CLI::PositiveNumber);

  for (auto* sub : {catalog, block, match, inv, repro, cls, prop}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIo;
  }

  try {
    if (*catalog) {
      if (action == "show" && id.empty()) throw Error(ErrorCode::InvalidInput, "catalog show needs a family id");
      return cmd_catalog(opt, action, id);
    }
    if (*block) return cmd_block(opt, id);
    if (*match) return cmd_match(opt, plus_id, minus_id, bound);
    if (*inv) return cmd_invariants(opt, config);
    if (*repro) return cmd_reproduce(opt);
    if (*cls) return cmd_classify(opt, configs);
    if (*prop) return cmd_property(opt, seed, trials);
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kIo;
}
