#pragma once

#include "tcs/blocks/building_block.hpp"
#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/lattice/normal_forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tcs::matching {

using blocks::BuildingBlock;
using lattice::IntegerLattice;

enum class ConfigurationKind { Perpendicular, Orthogonal, Skew };

inline const char* to_string(ConfigurationKind k) {
  switch (k) {
    case ConfigurationKind::Perpendicular: return "perpendicular";
    case ConfigurationKind::Orthogonal: return "orthogonal";
    case ConfigurationKind::Skew: return "skew";
  }
  return "?";
}

/// Two blocks glued along P = [[N+, D], [D^T, N-]] (trivial intersection N0 = 0).
struct Configuration {
  BuildingBlock plus;
  BuildingBlock minus;
  IntMatrix D;
  IntegerLattice P;
  ConfigurationKind kind = ConfigurationKind::Skew;

  std::size_t rank_plus() const { return plus.rank(); }
  std::size_t rank_minus() const { return minus.rank(); }

  /// Basis of N+ (resp. N-) as columns in P coordinates.
  IntMatrix plus_in_P() const { return vstack(IntMatrix::identity(rank_plus()), IntMatrix(rank_minus(), rank_plus())); }
  IntMatrix minus_in_P() const { return vstack(IntMatrix(rank_plus(), rank_minus()), IntMatrix::identity(rank_minus())); }
};

inline Configuration assemble_configuration(const BuildingBlock& plus, const BuildingBlock& minus, const IntMatrix& D) {
  if (D.rows() != plus.rank() || D.cols() != minus.rank())
    throw Error(ErrorCode::ShapeMismatch, "gluing block must be rank(N+) x rank(N-)");
  Configuration cfg;
  cfg.plus = plus;
  cfg.minus = minus;
  cfg.D = D;
  cfg.P = IntegerLattice(block_matrix(plus.N.gram(), D, D.transpose(), minus.N.gram()));
  if (!cfg.P.is_nondegenerate()) throw Error(ErrorCode::DegenerateP, "P is degenerate");
  auto sig = lattice::signature(cfg.P);
  if (sig.positive != 2) throw Error(ErrorCode::BadSignature, "P must have signature (2, rank - 2)");
  cfg.kind = D.is_zero() ? ConfigurationKind::Perpendicular : ConfigurationKind::Skew;
  return cfg;
}

/// Configuration with blocks exchanged and D transposed.
inline Configuration swap_sides(const Configuration& cfg) {
  return assemble_configuration(cfg.minus, cfg.plus, cfg.D.transpose());
}

/// Lattice generated by N+ and N- glued orthogonally along a shared sublattice N0, given
/// by embeddings A+ : N0 -> N+ and A- : N0 -> N- (columns). The pairing N+ x N- factors
/// through the projections to N0 and must be integral.
struct OrthogonalPushout {
  IntegerLattice lattice;
  IntMatrix plus_image;   // N+ basis in pushout coordinates
  IntMatrix minus_image;  // N- basis in pushout coordinates
  IntMatrix D;            // induced N+ x N- pairing
};

inline OrthogonalPushout orthogonal_pushout(const IntegerLattice& n_plus, const IntegerLattice& n_minus,
                                            const IntMatrix& a_plus, const IntMatrix& a_minus) {
  if (a_plus.cols() != a_minus.cols() || a_plus.rows() != n_plus.rank() || a_minus.rows() != n_minus.rank())
    throw Error(ErrorCode::ShapeMismatch, "shared sublattice embeddings have inconsistent shapes");
  const IntMatrix g0 = a_plus.transpose() * n_plus.gram() * a_plus;
  if (g0 != a_minus.transpose() * n_minus.gram() * a_minus)
    throw Error(ErrorCode::InvalidInput, "shared sublattice has different Grams on the two sides");
  if (!lattice::is_primitive(a_plus) || !lattice::is_primitive(a_minus))
    throw Error(ErrorCode::InvalidInput, "shared sublattice must be primitive on both sides");

  const RationalMatrix d_rat = to_rational(n_plus.gram() * a_plus) * lattice::inverse(to_rational(g0)) *
                               to_rational(a_minus.transpose() * n_minus.gram());
  IntMatrix d(d_rat.rows(), d_rat.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (!is_integer(d_rat(i, j))) throw Error(ErrorCode::InvalidInput, "orthogonal gluing is not integral");
      d(i, j) = numerator(d_rat(i, j));
    }

  const IntMatrix full = block_matrix(n_plus.gram(), d, d.transpose(), n_minus.gram());
  const std::size_t r = full.rows();
  const IntMatrix radical = lattice::integer_kernel(full);
  const std::size_t k = radical.cols();
  IntMatrix quotient_map = IntMatrix::identity(r);
  IntMatrix section = IntMatrix::identity(r);
  if (k > 0) {
    auto snf = lattice::smith_normal_form(radical);
    quotient_map = snf.U.block(k, 0, r - k, r);
    section = lattice::unimodular_inverse(snf.U).columns(k, r - k);
  }
  OrthogonalPushout out;
  out.lattice = IntegerLattice(section.transpose() * full * section);
  out.plus_image = quotient_map.columns(0, n_plus.rank());
  out.minus_image = quotient_map.columns(n_plus.rank(), n_minus.rank());
  out.D = d;
  return out;
}

/// Sublattices of P attached to a configuration.
///   P+ = N+ cap N-^perp, generators A+ in N+ coordinates (and P- symmetrically);
///   Lambda+ = P-^perp in P, with basis (N+ basis, N- cap P-^perp) and Lambda- symmetric.
struct DerivedLattices {
  IntMatrix A_plus;
  IntMatrix A_minus;
  IntegerLattice Lambda_plus;
  IntegerLattice Lambda_minus;
  IntMatrix Lambda_plus_basis;   // columns in P coordinates
  IntMatrix Lambda_minus_basis;  // columns in P coordinates
  std::size_t rank_nminus_cap_tplus = 0;
  std::size_t rank_nplus_cap_tminus = 0;
};

inline DerivedLattices derived_lattices(const Configuration& cfg) {
  DerivedLattices out;
  out.A_plus = lattice::integer_kernel(cfg.D.transpose());
  out.A_minus = lattice::integer_kernel(cfg.D);
  out.rank_nplus_cap_tminus = out.A_plus.cols();
  out.rank_nminus_cap_tplus = out.A_minus.cols();

  auto lambda_basis = [](const IntMatrix& own_in_P, const IntMatrix& other_gram, const IntMatrix& other_A,
                         const IntMatrix& other_in_P) {
    const IntMatrix extra = other_A.cols() == 0
                                ? IntMatrix::identity(other_gram.rows())
                                : lattice::integer_kernel(other_A.transpose() * other_gram);
    return hstack(own_in_P, other_in_P * extra);
  };
  out.Lambda_plus_basis = lambda_basis(cfg.plus_in_P(), cfg.minus.N.gram(), out.A_minus, cfg.minus_in_P());
  out.Lambda_minus_basis = lambda_basis(cfg.minus_in_P(), cfg.plus.N.gram(), out.A_plus, cfg.plus_in_P());
  const IntMatrix& g = cfg.P.gram();
  out.Lambda_plus = IntegerLattice(out.Lambda_plus_basis.transpose() * g * out.Lambda_plus_basis);
  out.Lambda_minus = IntegerLattice(out.Lambda_minus_basis.transpose() * g * out.Lambda_minus_basis);
  return out;
}

namespace detail {

/// Feasibility of the strict homogeneous system rows . t > 0 by Fourier-Motzkin elimination.
inline bool strict_system_feasible(std::vector<RationalVector> rows, std::size_t vars) {
  for (std::size_t c = vars; c-- > 0;) {
    std::vector<RationalVector> pos, neg, next;
    for (auto& r : rows) {
      if (r[c] > 0) pos.push_back(r);
      else if (r[c] < 0) neg.push_back(r);
      else next.push_back(r);
    }
    if (!pos.empty() && !neg.empty()) {
      for (const auto& p : pos)
        for (const auto& n : neg) {
          RationalVector comb(vars);
          for (std::size_t j = 0; j < vars; ++j) comb[j] = p[j] / p[c] - n[j] / n[c];
          next.push_back(std::move(comb));
        }
    }
    rows = std::move(next);
  }
  return rows.empty();
}

}  // namespace detail

/// Whether the sublattice spanned by the columns of `generators` (in N coordinates) meets
/// the open cone spanned by the (linearly independent) ample generators of the family.
inline bool meets_open_cone(const IntMatrix& generators, const std::vector<IntVector>& cone) {
  if (generators.cols() == 0) return false;
  const std::size_t r = generators.rows();
  if (cone.size() != r) throw Error(ErrorCode::InvalidInput, "ample cone must be simplicial (rank many generators)");
  const IntMatrix c = IntMatrix::from_columns(cone, r);
  if (lattice::determinant(c) == 0) throw Error(ErrorCode::InvalidInput, "ample cone generators are dependent");
  if (generators.cols() == r && lattice::rank(generators) == r) return true;
  // Coordinates with respect to the cone generators: lambda = C^{-1} x.
  const RationalMatrix coords = lattice::inverse(to_rational(c)) * to_rational(generators);
  if (generators.cols() == 1) {
    bool all_pos = true, all_neg = true;
    for (std::size_t i = 0; i < r; ++i) {
      if (!(coords(i, 0) > 0)) all_pos = false;
      if (!(coords(i, 0) < 0)) all_neg = false;
    }
    return all_pos || all_neg;
  }
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < r; ++i) rows.push_back(coords.row(i));
  return detail::strict_system_feasible(rows, generators.cols());
}

struct ConeCheck {
  bool plus = false;
  bool minus = false;
  bool ok() const { return plus && minus; }
};

inline ConeCheck cone_check(const Configuration& cfg, const DerivedLattices& derived) {
  return {meets_open_cone(derived.A_plus, cfg.plus.ample_cone),
          meets_open_cone(derived.A_minus, cfg.minus.ample_cone)};
}

inline ConeCheck cone_check(const Configuration& cfg) { return cone_check(cfg, derived_lattices(cfg)); }

struct GluingSearch {
  Int bound = 0;
  std::size_t candidates = 0;
  std::vector<Configuration> configurations;
};

/// All gluing blocks with entries in [-bound, bound] (row-major lexicographic order) whose
/// P is nondegenerate of signature (2, rank - 2) and whose P+/- meet the ample cones.
inline GluingSearch search_gluings(const BuildingBlock& plus, const BuildingBlock& minus, const Int& bound) {
  if (bound < 0) throw Error(ErrorCode::InvalidInput, "search bound must be nonnegative");
  const std::size_t rows = plus.rank();
  const std::size_t cols = minus.rank();
  GluingSearch out;
  out.bound = bound;
  IntMatrix d(rows, cols, -bound);
  const std::size_t cells = rows * cols;
  for (;;) {
    ++out.candidates;
    try {
      Configuration cfg = assemble_configuration(plus, minus, d);
      if (cone_check(cfg).ok()) out.configurations.push_back(std::move(cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateP && e.code() != ErrorCode::BadSignature) throw;
    }
    std::size_t cell = cells;
    while (cell > 0) {
      --cell;
      Int& x = d(cell / cols, cell % cols);
      if (x < bound) {
        ++x;
        break;
      }
      x = -bound;
      if (cell == 0) return out;
    }
    if (cells == 0) return out;
  }
}

}  // namespace tcs::matching
