#include "support/oracles.hpp"
#include "tcs/report/records.hpp"
#include "tcs/report/reproduce.hpp"
#include "tcs/tcs.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tcs;
using namespace tcs::invariants;

namespace {

const std::vector<blocks::SemiFanoFamily>& catalog() {
  static const auto c = blocks::load_catalog(TCS_CATALOG_PATH);
  return c;
}

matching::Configuration row_configuration(std::size_t i) {
  const auto& row = reference::table()[i];
  return report::build_configuration(catalog(), {row.plus, row.minus, row.D});
}

/// gd of the class of c in Z^n / sat(span B): with S = sat(B), [c] = g * primitive gives
/// [sat(B + Zc) : B + Zc] = g * [S : B], and both indices are last determinantal divisors.
Int divisibility_oracle(const IntVector& c, const IntMatrix& b) {
  const IntMatrix bc = hstack(b, IntMatrix::column(c));
  auto last_divisor = [](const IntMatrix& m) {
    const auto f = oracle::invariant_factors(m);
    Int prod = 1;
    for (const auto& x : f) prod *= x;
    return std::make_pair(f.size(), prod);
  };
  const auto [rb, db] = last_divisor(b);
  const auto [rbc, dbc] = last_divisor(bc);
  if (rbc == rb) return 0;
  return dbc / db;
}

}  // namespace

TEST(Invariants, ReferenceRows) {
  const long long expected[4][5] = {{71, 6, 0, 36, 12}, {71, 6, 24, 36, 12}, {85, 24, 12, 72, 24}, {85, 24, 36, 72, 24}};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto inv = evaluate(row_configuration(i)).invariants;
    EXPECT_EQ(inv.b2, 0);
    EXPECT_TRUE(inv.torsion_free);
    EXPECT_EQ(inv.b3, expected[i][0]);
    EXPECT_EQ(inv.m, expected[i][1]);
    EXPECT_EQ(inv.xi, expected[i][2]);
    EXPECT_EQ(inv.xi_modulus, expected[i][3]);
    EXPECT_EQ(inv.m_tilde, expected[i][4]);
    EXPECT_EQ(inv.nu, 24);
  }
}

TEST(Invariants, Mu) {
  for (std::size_t i = 0; i < 2; ++i) {
    const auto inv = evaluate(row_configuration(i)).invariants;
    EXPECT_TRUE(inv.mu_vacuous);
    EXPECT_EQ(inv.mu_modulus, 1);
  }
  for (std::size_t i = 2; i < 4; ++i) {
    const auto inv = evaluate(row_configuration(i)).invariants;
    EXPECT_FALSE(inv.mu_vacuous);
    EXPECT_EQ(inv.mu_modulus, 2);
    EXPECT_EQ(inv.mu, 1);
  }
  EXPECT_EQ(mu_from(24, 12, 24).value, 1);
  EXPECT_EQ(mu_from(24, 0, 12).modulus, 1);
  EXPECT_EQ(mu_from(24, 0, 112).modulus, 28);
  try {
    mu_from(24, 1, 24);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Inconsistent);
  }
}

TEST(Invariants, MHat) {
  EXPECT_EQ(m_hat(6), 1);
  EXPECT_EQ(m_hat(24), 2);
  EXPECT_EQ(m_hat(112), 28);
  EXPECT_EQ(m_tilde(6), 12);
}

TEST(Invariants, NuFormula) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cfg = row_configuration(i);
    const auto cs = chi_sigma_W(cfg.plus, cfg.minus);
    EXPECT_EQ(cs.sigma, 0);
    EXPECT_EQ(nu_general(cs.chi, cs.sigma, cfg.plus.chiZ + cfg.minus.chiZ), nu_tcs());
  }
  EXPECT_EQ(nu_general(0, 0, 0), 0);
  EXPECT_EQ(nu_general(-1, 0, 0), 47);
}

TEST(Invariants, DivisibilityMatchesOracle) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cfg = row_configuration(i);
    const auto d = divisibility_m(cfg);
    EXPECT_EQ(d.m_plus, divisibility_oracle(cfg.plus.c2Z, flat_plus(cfg)));
    EXPECT_EQ(d.m_minus, divisibility_oracle(cfg.minus.c2Z, flat_minus(cfg)));
  }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 3, k = rng() % n;
    const IntMatrix b = oracle::random_matrix(rng, n, k, -6, 6);
    IntVector c(n);
    for (auto& x : c) x = oracle::uniform(rng, -30, 30);
    EXPECT_EQ(lattice::gd_modulo(c, b), divisibility_oracle(c, b)) << to_string(b) << " " << to_string(c);
  }
}

TEST(Invariants, XiIndependentOfChoices) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cfg = row_configuration(i);
    const auto base = evaluate(cfg).invariants;
    for (unsigned seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed);
      const auto r = xi_tcs(cfg, base.m, XiLiftChoice{&rng, 6});
      EXPECT_EQ(r.xi, base.xi) << reference::table()[i].name << " seed " << seed;
      EXPECT_EQ(r.modulus, base.xi_modulus);
    }
  }
}

TEST(Invariants, XiMatchesGeneralFormula) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cfg = row_configuration(i);
    const auto inv = evaluate(cfg).invariants;
    const Int c1c3 = cfg.plus.chiZ + cfg.minus.chiZ;
    EXPECT_EQ(xi_general(inv.chiW, inv.sigmaW, c1c3, 48, 0, inv.integral_u_squared, inv.m), inv.xi);
  }
}

TEST(Invariants, SideSwap) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto cfg = row_configuration(i);
    const auto a = evaluate(cfg).invariants;
    const auto b = evaluate(matching::swap_sides(cfg)).invariants;
    EXPECT_EQ(a.b2, b.b2);
    EXPECT_EQ(a.b3, b.b3);
    EXPECT_EQ(a.m, b.m);
    EXPECT_EQ(a.nu, b.nu);
    EXPECT_EQ(a.xi, b.xi);
    EXPECT_EQ(a.xi_modulus, b.xi_modulus);
  }
}

TEST(Torsion, ToyExample) {
  const lattice::IntegerLattice ambient(IntMatrix::identity(3));
  const IntMatrix np = int_matrix({{1}, {1}, {0}});
  const IntMatrix nm = int_matrix({{1}, {1}, {1}});
  const auto t = torsion_check(ambient, hstack(np, nm), np, nm, true, true);
  EXPECT_TRUE(t.ambient_mod_P.is_trivial_torsion());
  EXPECT_EQ(t.ambient_mod_nplus_tminus.to_string(), "Z/2");
  EXPECT_EQ(t.ambient_mod_nminus_tplus.to_string(), "Z/2");
  EXPECT_FALSE(t.torsion_free());
  EXPECT_EQ(t.offending.size(), 2u);
  const auto clean = torsion_check(ambient, hstack(np, nm), int_matrix({{1}, {0}, {0}}), int_matrix({{0}, {1}, {0}}), true, false);
  EXPECT_FALSE(clean.torsion_free());
  EXPECT_EQ(clean.offending.size(), 1u);
}

TEST(Torsion, ReferenceRowsAreClean) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto ev = evaluate(row_configuration(i));
    EXPECT_TRUE(ev.torsion.torsion_free());
    EXPECT_EQ(ev.torsion.ambient_mod_P.free_rank, 22 - ev.embedding.rank());
  }
}

TEST(Classify, ReferencePairs) {
  std::vector<std::pair<std::string, TcsInvariants>> all;
  for (std::size_t i = 0; i < 4; ++i) all.emplace_back(reference::table()[i].name, evaluate(row_configuration(i)).invariants);
  const auto c = classify(all);
  ASSERT_EQ(c.groups.size(), 2u);
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[0].first, "row1");
  EXPECT_EQ(c.pairs[0].second, "row2");
  EXPECT_EQ(c.pairs[0].verdict, PairVerdict::Distinguished);
  EXPECT_EQ(c.pairs[1].first, "row3");
  EXPECT_EQ(c.pairs[1].verdict, PairVerdict::Distinguished);
  EXPECT_TRUE(classify({all[0]}).pairs.empty());
}

TEST(Classify, Verdicts) {
  TcsInvariants a;
  a.b3 = 85;
  a.m = 24;
  a.xi = 12;
  a.xi_modulus = 72;
  TcsInvariants b = a;
  b.xi = 60;
  TcsInvariants c = a;
  const auto r = classify({{"a", a}, {"b", b}, {"c", c}});
  ASSERT_EQ(r.pairs.size(), 3u);
  EXPECT_EQ(r.pairs[0].verdict, PairVerdict::OrientationReversal);
  EXPECT_EQ(r.pairs[1].verdict, PairVerdict::Equal);
  TcsInvariants twisted = a;
  twisted.b2 = 1;
  EXPECT_THROW(classify({{"x", twisted}}), Error);
}

TEST(Reproduce, TableMatches) {
  const auto t = report::reproduce_table(catalog());
  EXPECT_TRUE(t.pass());
  for (const auto& r : t.rows) EXPECT_TRUE(r.diffs.empty()) << r.name;
}

TEST(Reproduce, PerturbedCatalogNamesCell) {
  auto perturbed = catalog();
  for (auto& y : perturbed)
    if (y.id == "Y5") {
      y.c2_pairings = {Int(24)};
      y.picard = lattice::IntegerLattice(int_matrix({{22}}));
    }
  const auto t = report::reproduce_table(perturbed);
  EXPECT_FALSE(t.pass());
  ASSERT_FALSE(t.rows[0].diffs.empty());
  EXPECT_EQ(t.rows[0].diffs.front().cell, "P");
  EXPECT_TRUE(t.rows[3].pass);
}

TEST(ConfigFiles, MatchReferenceRows) {
  for (std::size_t i = 0; i < 4; ++i) {
    const auto spec = report::load_config(std::string(TCS_CONFIG_DIR) + "/row" + std::to_string(i + 1) + ".json");
    EXPECT_EQ(spec.plus, reference::table()[i].plus);
    EXPECT_EQ(spec.minus, reference::table()[i].minus);
    EXPECT_EQ(spec.D, reference::table()[i].D);
  }
  EXPECT_THROW(report::parse_config("{\"plus\": \"Y1\"}"), Error);
  EXPECT_THROW(report::parse_config("{\"plus\": \"Y1\", \"minus\": \"Y2\", \"D\": [[1, 2]], \"x\": 0}"), Error);
}
