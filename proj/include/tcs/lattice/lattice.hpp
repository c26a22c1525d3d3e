#pragma once

#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/lattice/normal_forms.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tcs::lattice {

/// Free abelian group with an integral symmetric bilinear form, given by its Gram matrix.
class IntegerLattice {
 public:
  IntegerLattice() = default;

  explicit IntegerLattice(IntMatrix gram, std::vector<std::string> labels = {})
      : gram_(std::move(gram)), labels_(std::move(labels)) {
    if (!gram_.is_symmetric())
      throw Error(ErrorCode::InvalidInput, "Gram matrix must be square and symmetric");
    if (!labels_.empty() && labels_.size() != gram_.rows())
      throw Error(ErrorCode::ShapeMismatch, "one label per basis vector");
  }

  const IntMatrix& gram() const noexcept { return gram_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t rank() const noexcept { return gram_.rows(); }

  Int pair(const IntVector& x, const IntVector& y) const { return tcs::pair(gram_, x, y); }
  Int norm(const IntVector& x) const { return pair(x, x); }

  Int determinant() const { return lattice::determinant(gram_); }

  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return true;
  }

  bool is_nondegenerate() const { return determinant() != 0; }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

/// Isometric map of `domain` into `codomain`; columns of `matrix` are the images of the
/// domain basis in codomain coordinates.
class LatticeEmbedding {
 public:
  LatticeEmbedding() = default;

  LatticeEmbedding(IntegerLattice domain, IntegerLattice codomain, IntMatrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.rank() || matrix_.cols() != domain_.rank())
      throw Error(ErrorCode::ShapeMismatch, "embedding matrix has wrong shape");
    if (matrix_.transpose() * codomain_.gram() * matrix_ != domain_.gram())
      throw Error(ErrorCode::InvalidInput, "embedding is not isometric");
  }

  /// Sublattice spanned by the given columns, with its induced Gram.
  static LatticeEmbedding from_columns(const IntegerLattice& codomain, const IntMatrix& columns) {
    IntMatrix induced = columns.transpose() * codomain.gram() * columns;
    return LatticeEmbedding(IntegerLattice(std::move(induced)), codomain, columns);
  }

  const IntegerLattice& domain() const noexcept { return domain_; }
  const IntegerLattice& codomain() const noexcept { return codomain_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }
  std::size_t rank() const noexcept { return matrix_.cols(); }

 private:
  IntegerLattice domain_;
  IntegerLattice codomain_;
  IntMatrix matrix_;
};

/// Finitely generated abelian group Z^free_rank + Z/d1 + ... with d1 | d2 | ...
/// Only invariant factors > 1 are stored.
struct FinAbGroup {
  IntVector invariant_factors;
  std::size_t free_rank = 0;

  static FinAbGroup from_diagonal(const IntVector& diagonal, std::size_t free_rank) {
    FinAbGroup g;
    g.free_rank = free_rank;
    for (const auto& d : diagonal)
      if (d > 1) g.invariant_factors.push_back(d);
    return g;
  }

  bool is_trivial_torsion() const { return invariant_factors.empty(); }
  /// Minimal number of generators of the torsion part.
  std::size_t min_generators() const { return invariant_factors.size(); }

  Int torsion_order() const {
    Int o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }

  std::string to_string() const {
    std::string s;
    if (free_rank > 0) s = "Z^" + std::to_string(free_rank);
    for (const auto& d : invariant_factors) s += (s.empty() ? "" : " + ") + ("Z/" + d.str());
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact signature by symmetric Gaussian reduction over Q. Pivots on a nonzero diagonal
/// entry when one exists, otherwise on a hyperbolic 2x2 block [[0,a],[a,0]] which
/// contributes one positive and one negative direction.
inline Signature signature(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw Error(ErrorCode::InvalidInput, "signature of non-symmetric matrix");
  RationalMatrix g = to_rational(gram);
  Signature sig;

  auto remove_indices = [](const RationalMatrix& m, const std::vector<std::size_t>& drop) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
    RationalMatrix out(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = m(keep[i], keep[j]);
    return out;
  };

  while (g.rows() > 0) {
    const std::size_t n = g.rows();
    std::optional<std::size_t> diag;
    for (std::size_t i = 0; i < n && !diag; ++i)
      if (g(i, i) != 0) diag = i;
    if (diag) {
      const std::size_t p = *diag;
      const Rational piv = g(p, p);
      (piv > 0 ? sig.positive : sig.negative) += 1;
      RationalMatrix next = g;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) next(i, j) = g(i, j) - g(i, p) * g(p, j) / piv;
      g = remove_indices(next, {p});
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> hyp;
    for (std::size_t i = 0; i < n && !hyp; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (g(i, j) != 0) {
          hyp = std::make_pair(i, j);
          break;
        }
    if (!hyp) {
      sig.zero += n;
      break;
    }
    const auto [p, q] = *hyp;
    const Rational a = g(p, q);
    sig.positive += 1;
    sig.negative += 1;
    // Schur complement against B = [[0,a],[a,0]], B^{-1} = [[0,1/a],[1/a,0]].
    RationalMatrix next = g;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        next(i, j) = g(i, j) - (g(i, p) * g(q, j) + g(i, q) * g(p, j)) / a;
    g = remove_indices(next, {p, q});
  }
  return sig;
}

inline Signature signature(const IntegerLattice& lat) { return signature(lat.gram()); }

inline bool is_positive_definite(const IntegerLattice& lat) {
  auto s = signature(lat);
  return s.positive == lat.rank();
}

inline bool is_negative_definite(const IntegerLattice& lat) {
  auto s = signature(lat);
  return s.negative == lat.rank();
}

/// L^vee / L for a nondegenerate lattice.
inline FinAbGroup discriminant_group(const IntegerLattice& lat) {
  if (lat.rank() > 0 && !lat.is_nondegenerate())
    throw Error(ErrorCode::DegenerateLattice, "discriminant group of a degenerate lattice");
  auto snf = smith_normal_form(lat.gram());
  return FinAbGroup::from_diagonal(snf.diagonal(), 0);
}

/// Greatest divisor: gcd of the entries, 0 for the zero vector.
inline Int gd(const IntVector& v) { return content(v); }

/// Z^n / span(columns of `generators`): free rank and torsion.
inline FinAbGroup quotient_group(const IntMatrix& generators) {
  const std::size_t n = generators.rows();
  if (generators.cols() == 0) return FinAbGroup{{}, n};
  auto snf = smith_normal_form(generators);
  return FinAbGroup::from_diagonal(snf.diagonal(), n - snf.rank());
}

inline FinAbGroup quotient(const IntegerLattice& codomain, const LatticeEmbedding& sub) {
  if (!(sub.codomain() == codomain))
    throw Error(ErrorCode::InvalidInput, "sublattice lives in a different lattice");
  return quotient_group(sub.matrix());
}

inline bool is_primitive(const IntMatrix& generators) {
  return quotient_group(generators).is_trivial_torsion();
}

inline bool is_primitive(const LatticeEmbedding& emb) { return is_primitive(emb.matrix()); }

/// Saturated basis (columns) of {x : x . image = 0}.
inline IntMatrix orthogonal_complement_basis(const IntMatrix& gram, const IntMatrix& image) {
  if (image.cols() == 0) return IntMatrix::identity(gram.rows());
  return integer_kernel(image.transpose() * gram);
}

inline LatticeEmbedding orthogonal_complement(const LatticeEmbedding& emb) {
  const auto& ambient = emb.codomain();
  return LatticeEmbedding::from_columns(ambient,
                                        orthogonal_complement_basis(ambient.gram(), emb.matrix()));
}

/// Primitive closure (Q-span intersected with the ambient group), Hermite-canonical.
inline IntMatrix saturation_basis(const IntMatrix& generators) {
  const std::size_t n = generators.rows();
  if (generators.cols() == 0) return IntMatrix(n, 0);
  IntMatrix annihilator = integer_kernel(generators.transpose()).transpose();
  if (annihilator.rows() == 0) return IntMatrix::identity(n);
  return integer_kernel(annihilator);
}

inline LatticeEmbedding saturation(const LatticeEmbedding& sub) {
  return LatticeEmbedding::from_columns(sub.codomain(), saturation_basis(sub.matrix()));
}

inline LatticeEmbedding sublattice_sum(const LatticeEmbedding& a, const LatticeEmbedding& b) {
  if (!(a.codomain() == b.codomain()))
    throw Error(ErrorCode::InvalidInput, "sublattices live in different lattices");
  return LatticeEmbedding::from_columns(a.codomain(), hermite_columns(hstack(a.matrix(), b.matrix())));
}

/// Canonical (Hermite) basis of the sublattice; equal sublattices give equal matrices.
inline IntMatrix canonical_basis(const LatticeEmbedding& sub) { return hermite_columns(sub.matrix()); }

/// Integral functionals (rows) whose common kernel is the saturation of span(generators);
/// the induced map Z^n -> Z^k is onto, so it realizes Z^n / saturation.
inline IntMatrix annihilator_rows(const IntMatrix& generators, std::size_t ambient_rank) {
  if (generators.cols() == 0) return IntMatrix::identity(ambient_rank);
  return integer_kernel(generators.transpose()).transpose();
}

/// Greatest divisor of the class of v in Z^n modulo the saturation of span(generators).
inline Int gd_modulo(const IntVector& v, const IntMatrix& generators) {
  return gd(annihilator_rows(generators, v.size()) * v);
}

}  // namespace tcs::lattice
