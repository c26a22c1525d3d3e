#include "support/oracles.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/lattice/normal_forms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tcs;
using namespace tcs::lattice;

namespace {

IntVector iv(std::initializer_list<long long> v) { return IntVector(v.begin(), v.end()); }

void expect_smith_identities(const IntMatrix& a) {
  const auto snf = smith_normal_form(a);
  EXPECT_EQ(snf.U * a * snf.V, snf.S);
  EXPECT_EQ(abs_value(determinant(snf.U)), 1);
  EXPECT_EQ(abs_value(determinant(snf.V)), 1);
  EXPECT_TRUE(oracle::is_diagonal(snf.S));
  const auto d = snf.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GE(d[i], 0);
    if (i + 1 < d.size() && d[i] != 0) EXPECT_EQ(d[i + 1] % d[i], 0);
    if (d[i] == 0)
      for (std::size_t j = i; j < d.size(); ++j) EXPECT_EQ(d[j], 0);
  }
}

}  // namespace

TEST(Integer, FloorAndMod) {
  EXPECT_EQ(floor_div(Int(-7), Int(2)), -4);
  EXPECT_EQ(mod_floor(Int(-7), Int(3)), 2);
  EXPECT_EQ(tcs::floor(Rational(-1, 2)), -1);
  EXPECT_EQ(tcs::ceil(Rational(-1, 2)), 0);
  EXPECT_EQ(lcm(Int(6), Int(4)), 12);
  EXPECT_EQ(content(iv({0, 0})), 0);
}

TEST(SmithNormalForm, SmallExample) {
  const auto snf = smith_normal_form(int_matrix({{2, 4}, {4, 2}}));
  EXPECT_EQ(snf.diagonal(), iv({2, 6}));
  EXPECT_EQ(oracle::invariant_factors(int_matrix({{2, 4}, {4, 2}})), iv({2, 6}));
}

TEST(SmithNormalForm, ZeroAndRectangular) {
  expect_smith_identities(IntMatrix(3, 2));
  expect_smith_identities(int_matrix({{0, 0, 6}, {0, 4, 0}}));
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 3)).rank(), 0u);
}

TEST(SmithNormalForm, RandomMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix a = oracle::random_matrix(rng, r, c, -12, 12);
    expect_smith_identities(a);
    IntVector nonzero;
    for (const auto& d : smith_normal_form(a).diagonal())
      if (d != 0) nonzero.push_back(d);
    EXPECT_EQ(nonzero, oracle::invariant_factors(a)) << to_string(a);
  }
}

TEST(SmithNormalForm, RandomLargeIdentities) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 10, c = 1 + rng() % 10;
    expect_smith_identities(oracle::random_matrix(rng, r, c, -9, 9));
  }
}

TEST(Hermite, RowFormAndKernel) {
  const IntMatrix h = hermite_rows(int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < i && j < h.cols(); ++j) EXPECT_EQ(h(i, j), 0);
  const IntMatrix a = int_matrix({{1, 2, 3}, {2, 4, 6}});
  const IntMatrix k = integer_kernel(a);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((a * k).is_zero());
  EXPECT_TRUE(is_primitive(k));
}

TEST(Determinant, MatchesLaplace) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = oracle::random_matrix(rng, n, n, -20, 20);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    EXPECT_EQ(determinant(a), oracle::minor_det(a, idx, idx));
  }
}

TEST(Rational, SolveAndInverse) {
  const RationalMatrix a = to_rational(int_matrix({{2, 1}, {1, -2}}));
  const auto inv = inverse(a);
  EXPECT_EQ(a * inv, RationalMatrix::identity(2));
  const auto sol = solve_rational(to_rational(int_matrix({{1, 1}})), RationalVector{Rational(3)});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->particular[0] + sol->particular[1], 3);
  EXPECT_FALSE(solve_rational(to_rational(int_matrix({{1, 1}, {2, 2}})), RationalVector{1, 3}).has_value());
}

TEST(Signature, KnownForms) {
  EXPECT_EQ(signature(int_matrix({{0, 1}, {1, 0}})), (Signature{1, 1, 0}));
  EXPECT_EQ(signature(int_matrix({{2, 1}, {1, -2}})), (Signature{1, 1, 0}));
  EXPECT_EQ(signature(int_matrix({{1, 1}, {1, 1}})), (Signature{1, 0, 1}));
  EXPECT_EQ(signature(int_matrix({{0, 0}, {0, 0}})), (Signature{0, 0, 2}));
}

TEST(Signature, MatchesSylvesterAndUnimodularInvariance) {
  std::mt19937_64 rng(17);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const IntMatrix g = oracle::random_symmetric(rng, n, -20, 20, false);
    const int neg = oracle::sylvester_negative_count(g);
    const Signature s = signature(g);
    if (neg >= 0) {
      ++compared;
      EXPECT_EQ(s.negative, static_cast<std::size_t>(neg));
      EXPECT_EQ(s.positive, n - neg);
      EXPECT_EQ(s.zero, 0u);
    }
    IntMatrix u = IntMatrix::identity(n);
    for (int step = 0; step < 6 && n > 1; ++step) {
      const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
      u.add_col_multiple(i, j, Int(oracle::uniform(rng, -3, 3)));
    }
    EXPECT_EQ(signature(u.transpose() * g * u), s);
  }
  EXPECT_GT(compared, 100);
}

TEST(Discriminant, Examples) {
  EXPECT_EQ(discriminant_group(IntegerLattice(int_matrix({{18}}))).to_string(), "Z/18");
  EXPECT_EQ(discriminant_group(IntegerLattice(int_matrix({{18, 0}, {0, 18}}))).to_string(), "Z/18 + Z/18");
  EXPECT_EQ(discriminant_group(IntegerLattice(int_matrix({{0, 1}, {1, 0}}))).min_generators(), 0u);
  EXPECT_THROW(discriminant_group(IntegerLattice(int_matrix({{1, 1}, {1, 1}}))), Error);
}

TEST(Discriminant, OrderIsDeterminant) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix g = oracle::random_symmetric(rng, 1 + rng() % 4, -10, 10, false);
    if (determinant(g) == 0) continue;
    EXPECT_EQ(discriminant_group(IntegerLattice(g)).torsion_order(), abs_value(determinant(g)));
  }
}

TEST(GreatestDivisor, Examples) {
  EXPECT_EQ(gd(iv({42, 18})), 6);
  EXPECT_EQ(gd(iv({0, -4, 6})), 2);
  EXPECT_EQ(gd(iv({0, 0})), 0);
  EXPECT_EQ(gd_modulo(iv({3, 5}), int_matrix({{1}, {1}})), 2);
}

TEST(Sublattices, QuotientSaturationSum) {
  const IntegerLattice z2(IntMatrix::identity(2));
  const auto twice = LatticeEmbedding::from_columns(z2, int_matrix({{2}, {0}}));
  EXPECT_EQ(quotient(z2, twice).to_string(), "Z^1 + Z/2");
  EXPECT_FALSE(is_primitive(twice));
  EXPECT_EQ(saturation(twice).matrix(), int_matrix({{1}, {0}}));
  const auto other = LatticeEmbedding::from_columns(z2, int_matrix({{1}, {1}}));
  const auto sum = sublattice_sum(twice, other);
  EXPECT_EQ(quotient(z2, sum).to_string(), "Z/2");
  EXPECT_EQ(canonical_basis(sum), canonical_basis(LatticeEmbedding::from_columns(z2, int_matrix({{1, 2}, {1, 0}}))));
}

TEST(Sublattices, OrthogonalComplement) {
  const IntegerLattice u(int_matrix({{0, 1}, {1, 0}}));
  const auto e = LatticeEmbedding::from_columns(u, int_matrix({{1}, {0}}));
  const auto perp = orthogonal_complement(e);
  EXPECT_EQ(perp.matrix(), int_matrix({{1}, {0}}));
  EXPECT_EQ(perp.domain().gram(), int_matrix({{0}}));
}

TEST(Sublattices, PrimitivityMatchesMaximalMinors) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 4, k = 1 + rng() % (n - 1);
    const IntMatrix x = oracle::random_matrix(rng, n, k, -4, 4);
    if (oracle::determinantal_divisor(x, k) == 0) continue;
    EXPECT_EQ(is_primitive(x), oracle::columns_primitive(x)) << to_string(x);
  }
}
