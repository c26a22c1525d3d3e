// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "support/random_checks.hpp"
#include "tcs/tcs.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tcs;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

#define CHECK(out, cond, msg)              \
  do {                                     \
    if (!(cond)) {                         \
      (out).pass = false;                  \
      std::ostringstream os_;              \
      os_ << msg;                          \
      if ((out).detail.empty()) (out).detail = os_.str(); \
    }                                      \
  } while (0)

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<blocks::SemiFanoFamily>& catalog() {
  static const auto c = blocks::load_catalog(TCS_CATALOG_PATH);
  return c;
}

matching::Configuration row_configuration(const reference::ReferenceRow& row) {
  return report::build_configuration(catalog(), {row.plus, row.minus, row.D});
}

Outcome table_regression() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto t = report::reproduce_table(catalog());
  const double s = seconds_since(start);
  for (const auto& r : t.rows)
    for (const auto& d : r.diffs) CHECK(o, false, r.name << "." << d.cell << ": expected " << d.expected << ", got " << d.actual);
  CHECK(o, s < 60.0, "runtime " << s << " s >= 60 s");
  if (o.pass) o.detail = "4 rows exact, " + std::to_string(s) + " s";
  return o;
}

Outcome nu_over_search() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t configs = 0, pairs = 0;
  const auto& c = catalog();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i; j < c.size(); ++j) {
      ++pairs;
      const auto plus = blocks::derive_block(c[i]);
      const auto minus = blocks::derive_block(c[j]);
      const auto found = matching::search_gluings(plus, minus, 3);
      for (const auto& cfg : found.configurations) {
        ++configs;
        const auto cs = invariants::chi_sigma_W(cfg.plus, cfg.minus);
        const Int recomputed = invariants::nu_general(cs.chi, cs.sigma, cfg.plus.chiZ + cfg.minus.chiZ);
        CHECK(o, invariants::nu_tcs() == 24, "constant nu is " << invariants::nu_tcs());
        CHECK(o, recomputed == 24, c[i].id << "/" << c[j].id << " D=" << to_string(cfg.D) << ": nu = " << recomputed);
      }
    }
  const double s = seconds_since(start);
  CHECK(o, pairs == 15, pairs << " unordered pairs");
  CHECK(o, configs > 0, "search produced no configurations");
  CHECK(o, s < 120.0, "runtime " << s << " s >= 120 s");
  if (o.pass) o.detail = std::to_string(configs) + " configurations over " + std::to_string(pairs) + " pairs, " +
                         std::to_string(s) + " s";
  return o;
}

Outcome mu_cross_check() {
  Outcome o;
  const auto& rows = reference::table();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto inv = invariants::evaluate(row_configuration(rows[i])).invariants;
    if (i < 2) {
      CHECK(o, inv.mu_modulus == 1 && inv.mu_vacuous, rows[i].name << ": mu modulus " << inv.mu_modulus);
    } else {
      CHECK(o, inv.mu_modulus == 2 && inv.mu == 1, rows[i].name << ": mu = " << inv.mu << " mod " << inv.mu_modulus);
    }
  }
  if (o.pass) o.detail = "rows 1-2 vacuous, rows 3-4 mu = 1 mod 2";
  return o;
}

Outcome genericity() {
  Outcome o;
  double worst = 0;
  for (const auto& row : reference::table()) {
    const auto cfg = row_configuration(row);
    const auto derived = matching::derived_lattices(cfg);
    const std::pair<const blocks::BuildingBlock*, const lattice::IntegerLattice*> sides[] = {
        {&cfg.plus, &derived.Lambda_plus}, {&cfg.minus, &derived.Lambda_minus}};
    for (const auto& [blk, lambda] : sides) {
      const auto start = std::chrono::steady_clock::now();
      const auto r = matching::genericity_check(matching::genericity_kind_for(blk->family_id), *lambda, blk->rank());
      const double s = seconds_since(start);
      worst = std::max(worst, s);
      CHECK(o, r.pass, row.name << " " << blk->family_id << " fails rule " << r.rule_id);
      CHECK(o, s < 10.0, row.name << " " << blk->family_id << " took " << s << " s");
    }
  }
  if (o.pass) o.detail = "6 lattices, slowest " + std::to_string(worst) + " s";
  return o;
}

Outcome topology_flags() {
  Outcome o;
  for (const auto& row : reference::table()) {
    const auto inv = invariants::evaluate(row_configuration(row)).invariants;
    CHECK(o, inv.b2 == 0, row.name << ": b2 = " << inv.b2);
    CHECK(o, inv.torsion_free, row.name << ": torsion");
  }
  if (o.pass) o.detail = "b2 = 0, torsion-free on 4 rows";
  return o;
}

Outcome xi_choice_independence() {
  Outcome o;
  for (const auto& row : reference::table()) {
    const auto cfg = row_configuration(row);
    const auto base = invariants::evaluate(cfg).invariants;
    for (unsigned seed = 1; seed <= 100; ++seed) {
      std::mt19937_64 rng(seed * 7919u);
      const auto r = invariants::xi_tcs(cfg, base.m, invariants::XiLiftChoice{&rng, 6});
      CHECK(o, r.xi == base.xi && r.modulus == base.xi_modulus,
            row.name << " seed " << seed << ": " << r.xi << " mod " << r.modulus << " vs " << base.xi);
    }
  }
  if (o.pass) o.detail = "100 choices x 4 rows";
  return o;
}

Outcome side_swap() {
  Outcome o;
  for (const auto& row : reference::table()) {
    const auto cfg = row_configuration(row);
    const auto a = invariants::evaluate(cfg).invariants;
    const auto b = invariants::evaluate(matching::swap_sides(cfg)).invariants;
    CHECK(o, a.b2 == b.b2 && a.b3 == b.b3 && a.m == b.m && a.nu == b.nu && a.xi == b.xi && a.xi_modulus == b.xi_modulus,
          row.name << " changes under swap");
  }
  if (o.pass) o.detail = "4 rows";
  return o;
}

Outcome enumeration_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  const auto definite = oracle::check_definite_enumeration(rng, 60);
  const auto pairing = oracle::check_pairing_norm(rng, 60);
  CHECK(o, definite.ok(), "definite: " << definite.failures << " mismatches, first " << definite.first_failure);
  CHECK(o, pairing.ok(), "pairing: " << pairing.failures << " mismatches, first " << pairing.first_failure);
  const auto roots = enumeration::definite_vectors_of_norm(k3::e8_negative(), -2);
  CHECK(o, roots.size() == 240 && oracle::e8_root_count_coordinate_model() == 240,
        "E8(-1) roots: " << roots.size());
  if (o.pass)
    o.detail = std::to_string(definite.cases) + " definite + " + std::to_string(pairing.cases) +
               " signature (1, r-1) lattices, 240 roots";
  return o;
}

Outcome normal_form_oracle() {
  Outcome o;
  std::mt19937_64 rng(977);
  const auto s = oracle::check_smith_forms(rng, 250);
  CHECK(o, s.ok(), s.failures << " failures, first " << s.first_failure);
  if (o.pass) o.detail = std::to_string(s.cases) + " matrices up to 10x10";
  return o;
}

Outcome embedding_soundness() {
  Outcome o;
  for (const auto& row : reference::table()) {
    bool ok = false;
    try {
      ok = oracle::embedding_sound(row.P);
    } catch (const Error& e) {
      CHECK(o, false, row.name << ": " << e.what());
    }
    CHECK(o, ok, row.name << " embedding is not sound");
  }
  std::mt19937_64 rng(4242);
  const auto s = oracle::check_random_embeddings(rng, 24);
  CHECK(o, s.ok(), s.failures << " random failures, first " << s.first_failure);
  if (o.pass) o.detail = "4 reference + " + std::to_string(s.cases) + " random lattices";
  return o;
}

Outcome blowup_identities() {
  Outcome o;
  for (const auto& y : catalog()) {
    const auto z = blocks::derive_block(y);
    CHECK(o, z.c1_dot_c2() == 24, y.id << ": c1.c2 = " << z.c1_dot_c2());
    CHECK(o, lattice::gd(z.c2Z) % 2 == 0, y.id << ": gd(c2Z) = " << lattice::gd(z.c2Z));
  }
  if (o.pass) o.detail = std::to_string(catalog().size()) + " blocks";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"table regression (P, A, Lambda, b3, m, xi), exact, < 60 s", table_regression},
      {"nu = 24 mod 48 over all searched configurations (15 pairs, bound 3), exact, < 120 s", nu_over_search},
      {"mu cross-check on reference rows, exact", mu_cross_check},
      {"genericity passes for all six Lambda lattices, each < 10 s", genericity},
      {"b2 = 0 and torsion-free on reference rows, exact", topology_flags},
      {"xi independent of 100 lift/preimage choices per row, exact", xi_choice_independence},
      {"side swap leaves (b2, b3, m, nu, xi) unchanged, exact", side_swap},
      {"enumeration agrees with box search on >= 50 lattices, E8(-1) has 240 roots, exact", enumeration_oracle},
      {"Smith normal form identities on >= 200 random matrices, exact", normal_form_oracle},
      {"primitive embeddings sound on reference and >= 20 random lattices, exact", embedding_soundness},
      {"c1.c2 = 24 and 2 | gd(c2) for every derived block, exact", blowup_identities},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " [" << o.detail << "]";
    std::cout << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
