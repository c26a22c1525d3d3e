#pragma once

#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/k3/k3_lattice.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/lattice/normal_forms.hpp"
#include "tcs/matching/configuration.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace tcs::invariants {

using lattice::FinAbGroup;
using lattice::IntegerLattice;
using lattice::LatticeEmbedding;
using matching::Configuration;
using matching::DerivedLattices;

struct TcsInvariants {
  Int b2 = 0;
  Int b3 = 0;
  bool torsion_free = true;
  Int m = 0;
  Int m_plus = 0;
  Int m_minus = 0;
  Int m_tilde = 0;
  Int m_hat = 0;
  Int nu = 0;
  Int xi = 0;
  Int xi_modulus = 0;
  Int mu = 0;
  Int mu_modulus = 1;
  bool mu_vacuous = true;
  Int chiW = 0;
  Int sigmaW = 0;
  Rational integral_u_squared = 0;
};

struct Betti {
  Int b2 = 0;
  Int b3 = 0;
};

/// b2 = rank N0 (zero for block-assembled P); b3 from the Mayer-Vietoris decomposition of
/// H^3(M) with one-dimensional kernels K+/- of the restriction maps.
inline Betti betti(const Configuration& cfg, const DerivedLattices& derived) {
  Betti b;
  b.b2 = 0;
  b.b3 = Int(k3::kRank - cfg.P.rank()) + Int(derived.rank_nminus_cap_tplus) + Int(derived.rank_nplus_cap_tminus) +
         cfg.plus.b3Z + cfg.minus.b3Z + Int(cfg.plus.k_rank + cfg.minus.k_rank - 1);
  return b;
}

struct TorsionReport {
  FinAbGroup ambient_mod_P;
  FinAbGroup ambient_mod_nplus_tminus;
  FinAbGroup ambient_mod_nminus_tplus;
  bool h3_plus_torsion_free = true;
  bool h3_minus_torsion_free = true;
  std::vector<std::string> offending;

  bool torsion_free() const { return offending.empty(); }
};

/// Torsion contributions for sublattices N+/- of an ambient lattice. Columns of the image
/// matrices are in ambient coordinates.
inline TorsionReport torsion_check(const IntegerLattice& ambient, const IntMatrix& p_image,
                                   const IntMatrix& n_plus_image, const IntMatrix& n_minus_image,
                                   bool h3_plus_torsion_free, bool h3_minus_torsion_free) {
  const IntMatrix& g = ambient.gram();
  TorsionReport r;
  r.ambient_mod_P = lattice::quotient_group(p_image);
  const IntMatrix t_plus = lattice::orthogonal_complement_basis(g, n_plus_image);
  const IntMatrix t_minus = lattice::orthogonal_complement_basis(g, n_minus_image);
  r.ambient_mod_nplus_tminus = lattice::quotient_group(hstack(n_plus_image, t_minus));
  r.ambient_mod_nminus_tplus = lattice::quotient_group(hstack(n_minus_image, t_plus));
  r.h3_plus_torsion_free = h3_plus_torsion_free;
  r.h3_minus_torsion_free = h3_minus_torsion_free;
  if (!r.ambient_mod_P.is_trivial_torsion()) r.offending.push_back("Tor(L/P) = " + r.ambient_mod_P.to_string());
  if (!r.ambient_mod_nplus_tminus.is_trivial_torsion())
    r.offending.push_back("Tor(L/(N+ + T-)) = " + r.ambient_mod_nplus_tminus.to_string());
  if (!r.ambient_mod_nminus_tplus.is_trivial_torsion())
    r.offending.push_back("Tor(L/(N- + T+)) = " + r.ambient_mod_nminus_tplus.to_string());
  if (!h3_plus_torsion_free) r.offending.push_back("H^3(Z+) has torsion");
  if (!h3_minus_torsion_free) r.offending.push_back("H^3(Z-) has torsion");
  return r;
}

inline TorsionReport torsion_check(const Configuration& cfg, const LatticeEmbedding& emb_p) {
  const IntMatrix& x = emb_p.matrix();
  auto r = torsion_check(emb_p.codomain(), x, x * cfg.plus_in_P(), x * cfg.minus_in_P(), cfg.plus.h3_torsion_free,
                         cfg.minus.h3_torsion_free);
  if (!r.ambient_mod_P.is_trivial_torsion())
    throw Error(ErrorCode::Inconsistent, "embedding of P is not primitive");
  return r;
}

/// Functionals on H^2(Z+) (columns) obtained from N- through P, and symmetrically.
inline IntMatrix flat_plus(const Configuration& cfg) { return cfg.plus.restriction().transpose() * cfg.D; }
inline IntMatrix flat_minus(const Configuration& cfg) {
  return cfg.minus.restriction().transpose() * cfg.D.transpose();
}

struct Divisibility {
  Int m_plus = 0;
  Int m_minus = 0;
  Int m = 0;
};

/// m+/- = greatest divisor of c2(Z+/-) modulo the saturated image of N-/+; m = gcd.
inline Divisibility divisibility_m(const Configuration& cfg) {
  Divisibility d;
  d.m_plus = lattice::gd_modulo(cfg.plus.c2Z, flat_plus(cfg));
  d.m_minus = lattice::gd_modulo(cfg.minus.c2Z, flat_minus(cfg));
  d.m = gcd(d.m_plus, d.m_minus);
  return d;
}

inline Int m_tilde(const Int& m) { return lcm(m, Int(4)); }

/// gcd(28, numerator of m/4).
inline Int m_hat(const Int& m) { return gcd(Int(28), numerator(Rational(m, 4))); }

struct ChiSigma {
  Int chi = 0;
  Int sigma = 0;
};

inline ChiSigma chi_sigma_W(const blocks::BuildingBlock& plus, const blocks::BuildingBlock& minus) {
  return {plus.chiZ + minus.chiZ - 24, 0};
}

inline Int nu_general(const Int& chi, const Int& sigma, const Int& c1c3) { return mod_floor(chi - 3 * sigma - c1c3, Int(48)); }

inline Int nu_tcs() { return 24; }

/// 7 chi - 45 sigma / 2 - (7 c1c3 - 2 c1^2 c2 + c1^4 / 2) + 3 u^2 / 2 reduced mod 3 lcm(m, 4).
inline Int xi_general(const Rational& chi, const Rational& sigma, const Rational& c1c3, const Rational& c1sq_c2,
                      const Rational& c1_4, const Rational& u_sq, const Int& m) {
  const Rational total = 7 * chi - Rational(45, 2) * sigma - (7 * c1c3 - 2 * c1sq_c2 + c1_4 / 2) + Rational(3, 2) * u_sq;
  if (!is_integer(total)) throw Error(ErrorCode::NonIntegralResidue, "xi total " + to_string(total) + " is not integral");
  return mod_floor(numerator(total), 3 * m_tilde(m));
}

/// Randomization hook for the choices made while computing xi: the integral lift and the
/// rational preimages. Without a generator the canonical choices are used.
struct XiLiftChoice {
  std::mt19937_64* rng = nullptr;
  int spread = 6;
};

namespace detail {

inline Int random_int(XiLiftChoice& choice) {
  std::uniform_int_distribution<int> dist(-choice.spread, choice.spread);
  return Int(dist(*choice.rng));
}

/// An integral sigma with c - m sigma in the saturation of span(B).
inline IntVector lift(const IntVector& c, const IntMatrix& b, const Int& m, XiLiftChoice& choice) {
  const std::size_t n = c.size();
  const IntMatrix r = lattice::annihilator_rows(b, n);
  const std::size_t k = r.rows();
  IntVector sigma(n, Int(0));
  if (k == 0) {
    if (choice.rng)
      for (auto& s : sigma) s = random_int(choice);
    return sigma;
  }
  IntVector target = r * c;
  for (auto& t : target) {
    if (t % m != 0) throw Error(ErrorCode::LiftNotFound, "c2 is not divisible by m modulo the image");
    t /= m;
  }
  auto snf = lattice::smith_normal_form(r);
  const IntVector ut = snf.U * target;
  IntVector y(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i < k) {
      if (snf.S(i, i) == 0 || ut[i] % snf.S(i, i) != 0)
        throw Error(ErrorCode::LiftNotFound, "no integral lift exists");
      y[i] = ut[i] / snf.S(i, i);
    } else if (choice.rng) {
      y[i] = random_int(choice);
    }
  }
  return snf.V * y;
}

inline RationalVector preimage(const IntMatrix& b, const IntVector& u, XiLiftChoice& choice) {
  auto sol = lattice::solve_rational(to_rational(b), RationalVector(u.begin(), u.end()));
  if (!sol) throw Error(ErrorCode::SingularPairing, "u is not in the image of the pairing map");
  RationalVector n = sol->particular;
  if (choice.rng) {
    std::uniform_int_distribution<int> den(1, 4);
    for (const auto& kv : sol->nullspace) {
      const Rational f(random_int(choice), Int(den(*choice.rng)));
      for (std::size_t i = 0; i < n.size(); ++i) n[i] += f * kv[i];
    }
  }
  return n;
}

}  // namespace detail

struct XiResult {
  Int xi = 0;
  Int modulus = 0;
  Rational integral_u_squared = 0;
  IntVector sigma_plus;
  IntVector sigma_minus;
};

/// xi = (3/2) int_W u^2 mod 3 lcm(m, 4), with u = c2 - m sigma and
/// int_W u^2 = 2 n+^T D n-, where n-/+ are preimages of u+/- under the pairing maps.
inline XiResult xi_tcs(const Configuration& cfg, const Int& m, XiLiftChoice choice = {}) {
  const IntMatrix b_plus = flat_plus(cfg);
  const IntMatrix b_minus = flat_minus(cfg);
  XiResult out;
  out.sigma_plus = detail::lift(cfg.plus.c2Z, b_plus, m, choice);
  out.sigma_minus = detail::lift(cfg.minus.c2Z, b_minus, m, choice);
  IntVector u_plus = cfg.plus.c2Z, u_minus = cfg.minus.c2Z;
  for (std::size_t i = 0; i < u_plus.size(); ++i) u_plus[i] -= m * out.sigma_plus[i];
  for (std::size_t i = 0; i < u_minus.size(); ++i) u_minus[i] -= m * out.sigma_minus[i];
  if (dot(cfg.plus.c1(), u_plus) != 0 || dot(cfg.minus.c1(), u_minus) != 0)
    throw Error(ErrorCode::LiftNotFound, "u does not vanish on c1");

  const RationalVector n_minus = detail::preimage(b_plus, u_plus, choice);
  const RationalVector n_plus = detail::preimage(b_minus, u_minus, choice);
  const RationalVector dn = to_rational(cfg.D) * n_minus;
  Rational pairing = 0;
  for (std::size_t i = 0; i < n_plus.size(); ++i) pairing += n_plus[i] * dn[i];
  out.integral_u_squared = 2 * pairing;
  const Rational xi = Rational(3, 2) * out.integral_u_squared;
  if (!is_integer(xi)) throw Error(ErrorCode::NonIntegralResidue, "xi = " + to_string(xi) + " is not integral");
  out.modulus = 3 * m_tilde(m);
  out.xi = mod_floor(numerator(xi), out.modulus);
  return out;
}

struct Mu {
  Int value = 0;
  Int modulus = 1;
  bool vacuous = true;
};

/// mu = (xi - 7 nu) / 12 mod gcd(28, m_tilde / 4).
inline Mu mu_from(const Int& nu, const Int& xi, const Int& m_tilde_value) {
  if (m_tilde_value % 4 != 0) throw Error(ErrorCode::InvalidInput, "m_tilde must be divisible by 4");
  Mu mu;
  mu.modulus = gcd(Int(28), m_tilde_value / 4);
  const Int diff = xi - 7 * nu;
  if (diff % 12 != 0) throw Error(ErrorCode::Inconsistent, "xi - 7 nu is not divisible by 12");
  mu.vacuous = mu.modulus == 1;
  mu.value = mod_floor(diff / 12, mu.modulus);
  return mu;
}

struct Evaluation {
  DerivedLattices derived;
  LatticeEmbedding embedding;
  TorsionReport torsion;
  Divisibility divisibility;
  XiResult xi;
  TcsInvariants invariants;
};

inline Evaluation evaluate(const Configuration& cfg, XiLiftChoice choice = {}) {
  Evaluation ev;
  ev.derived = matching::derived_lattices(cfg);
  ev.embedding = k3::embed_primitively(cfg.P);
  ev.torsion = torsion_check(cfg, ev.embedding);
  auto& inv = ev.invariants;
  const Betti b = betti(cfg, ev.derived);
  inv.b2 = b.b2;
  inv.b3 = b.b3;
  inv.torsion_free = ev.torsion.torsion_free();
  if (!inv.torsion_free) throw Error(ErrorCode::ScopeError, "cohomology has torsion: " + ev.torsion.offending.front());
  ev.divisibility = divisibility_m(cfg);
  inv.m = ev.divisibility.m;
  inv.m_plus = ev.divisibility.m_plus;
  inv.m_minus = ev.divisibility.m_minus;
  inv.m_tilde = m_tilde(inv.m);
  inv.m_hat = m_hat(inv.m);
  const ChiSigma cs = chi_sigma_W(cfg.plus, cfg.minus);
  inv.chiW = cs.chi;
  inv.sigmaW = cs.sigma;
  inv.nu = nu_tcs();
  if (nu_general(cs.chi, cs.sigma, cfg.plus.chiZ + cfg.minus.chiZ) != inv.nu)
    throw Error(ErrorCode::Inconsistent, "nu recomputation disagrees");
  ev.xi = xi_tcs(cfg, inv.m, choice);
  inv.xi = ev.xi.xi;
  inv.xi_modulus = ev.xi.modulus;
  inv.integral_u_squared = ev.xi.integral_u_squared;
  const Mu mu = mu_from(inv.nu, inv.xi, inv.m_tilde);
  inv.mu = mu.value;
  inv.mu_modulus = mu.modulus;
  inv.mu_vacuous = mu.vacuous;
  return ev;
}

enum class PairVerdict { Distinguished, OrientationReversal, Equal };

inline const char* to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::Distinguished: return "diffeomorphic underlying manifolds, non-homotopic G2-structures";
    case PairVerdict::OrientationReversal: return "inconclusive (orientation-reversal)";
    case PairVerdict::Equal: return "same invariants";
  }
  return "?";
}

struct PairFinding {
  std::string first;
  std::string second;
  PairVerdict verdict;
};

struct ClassGroup {
  Int b3, m, mu, mu_modulus;
  std::vector<std::string> members;
};

struct Classification {
  std::vector<ClassGroup> groups;
  std::vector<PairFinding> pairs;
};

/// Groups 2-connected torsion-free results by (b3, m, mu) and compares xi within groups.
inline Classification classify(const std::vector<std::pair<std::string, TcsInvariants>>& results) {
  for (const auto& [id, inv] : results)
    if (!inv.torsion_free || inv.b2 != 0) throw Error(ErrorCode::ScopeError, id + " is outside the classification scope");
  Classification out;
  std::map<std::tuple<Int, Int, Int, Int>, std::vector<std::size_t>> index;
  std::vector<std::tuple<Int, Int, Int, Int>> order;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& inv = results[i].second;
    auto key = std::make_tuple(inv.b3, inv.m, inv.mu, inv.mu_modulus);
    if (!index.count(key)) order.push_back(key);
    index[key].push_back(i);
  }
  for (const auto& key : order) {
    const auto& members = index[key];
    ClassGroup g{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), {}};
    for (auto i : members) g.members.push_back(results[i].first);
    out.groups.push_back(g);
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto& x = results[members[a]].second;
        const auto& y = results[members[b]].second;
        const Int mod = x.xi_modulus;
        PairVerdict v;
        if (mod_floor(x.xi - y.xi, mod) == 0) v = PairVerdict::Equal;
        else if (mod_floor(x.xi + y.xi, mod) == 0) v = PairVerdict::OrientationReversal;
        else v = PairVerdict::Distinguished;
        out.pairs.push_back({results[members[a]].first, results[members[b]].first, v});
      }
  }
  return out;
}

}  // namespace tcs::invariants
