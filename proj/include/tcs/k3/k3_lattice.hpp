#pragma once

#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/enumeration/enumerate.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/lattice/normal_forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tcs::k3 {

using lattice::IntegerLattice;
using lattice::LatticeEmbedding;

inline constexpr std::size_t kRank = 22;
inline constexpr std::size_t kHyperbolicPlanes = 3;
inline constexpr std::size_t kE8Offset = 6;

/// Bourbaki-numbered E8 Cartan matrix (positive definite).
inline IntMatrix e8_cartan() {
  IntMatrix c(8, 8);
  for (std::size_t i = 0; i < 8; ++i) c(i, i) = 2;
  const std::size_t edges[7][2] = {{1, 3}, {3, 4}, {4, 2}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
  for (const auto& e : edges) {
    c(e[0] - 1, e[1] - 1) = -1;
    c(e[1] - 1, e[0] - 1) = -1;
  }
  return c;
}

inline IntegerLattice e8_negative() { return IntegerLattice(-e8_cartan()); }

/// U^3 + E8(-1)^2 in basis e1,f1,e2,f2,e3,f3, then the two E8(-1) root bases.
inline const IntegerLattice& k3_lattice() {
  static const IntegerLattice lattice = [] {
    IntMatrix g(kRank, kRank);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < kHyperbolicPlanes; ++i) {
      g(2 * i, 2 * i + 1) = 1;
      g(2 * i + 1, 2 * i) = 1;
      labels.push_back("e" + std::to_string(i + 1));
      labels.push_back("f" + std::to_string(i + 1));
    }
    const IntMatrix e8 = -e8_cartan();
    for (std::size_t copy = 0; copy < 2; ++copy) {
      const std::size_t off = kE8Offset + 8 * copy;
      for (std::size_t i = 0; i < 8; ++i) {
        labels.push_back("r" + std::to_string(copy + 1) + "_" + std::to_string(i + 1));
        for (std::size_t j = 0; j < 8; ++j) g(off + i, off + j) = e8(i, j);
      }
    }
    IntegerLattice l(g, labels);
    auto sig = lattice::signature(l);
    if (!l.is_even() || abs_value(l.determinant()) != 1 || sig.positive != 3 || sig.negative != 19)
      throw Error(ErrorCode::InvalidInput, "K3 lattice construction is inconsistent");
    return l;
  }();
  return lattice;
}

inline std::size_t e_index(std::size_t i) { return 2 * i; }
inline std::size_t f_index(std::size_t i) { return 2 * i + 1; }

/// Sufficient criterion for a primitive embedding of an even lattice into an even
/// unimodular lattice of the given rank and signature. False means inconclusive.
inline bool nikulin_embedding_exists(const IntegerLattice& p, std::size_t target_rank = kRank,
                                     std::size_t target_positive = 3, std::size_t target_negative = 19) {
  if (!p.is_even()) throw Error(ErrorCode::OddLattice, "lattice is not even");
  auto sig = lattice::signature(p);
  if (sig.zero != 0) throw Error(ErrorCode::DegenerateLattice, "lattice is degenerate");
  if (sig.positive > target_positive || sig.negative > target_negative) return false;
  if (2 * p.rank() <= target_rank) return true;
  const std::size_t generators = lattice::discriminant_group(p).min_generators();
  return p.rank() + generators < target_rank;
}

namespace detail {

/// Images e_i + sum_{j} a_ij f_j for the first `count` basis vectors (count <= 3), with
/// a_ii = G_ii / 2, a_ij = G_ij for i < j and a_ji = 0.
inline IntMatrix hyperbolic_images(const IntMatrix& gram, std::size_t count) {
  IntMatrix x(kRank, count);
  for (std::size_t i = 0; i < count; ++i) {
    x(e_index(i), i) = 1;
    x(f_index(i), i) = gram(i, i) / 2;
    for (std::size_t j = i + 1; j < count; ++j) x(f_index(j), i) = gram(i, j);
  }
  return x;
}

inline void next_in_box(IntVector& v, const Int& radius, bool& done) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < radius) {
      ++v[i];
      return;
    }
    v[i] = -radius;
  }
  done = true;
}

/// Smallest primitive vector of negative norm, by max-norm then lexicographic order.
inline IntVector small_negative_vector(const IntegerLattice& p) {
  const std::size_t n = p.rank();
  for (Int radius = 1; radius <= 64; ++radius) {
    IntVector v(n, -radius);
    bool done = false;
    while (!done) {
      Int maxabs = 0;
      for (const auto& x : v) maxabs = std::max(maxabs, abs_value(x));
      if (maxabs == radius && lattice::gd(v) == 1 && p.norm(v) < 0) return v;
      next_in_box(v, radius, done);
    }
  }
  throw Error(ErrorCode::NoEmbeddingFound, "no small vector of negative norm");
}

/// Unimodular matrix whose last column is the primitive vector v.
inline IntMatrix complete_basis(const IntVector& v) {
  const std::size_t n = v.size();
  auto snf = lattice::smith_normal_form(IntMatrix::column(v));
  IntMatrix b = lattice::unimodular_inverse(snf.U);
  if (snf.V(0, 0) < 0) b.negate_col(0);
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) out(i, j - 1) = b(i, j);
    out(i, n - 1) = b(i, 0);
  }
  return out;
}

}  // namespace detail

/// Explicit primitive isometric embedding of an even nondegenerate lattice of rank <= 4
/// into the K3 lattice. Columns of the result are images of the basis of `p`.
inline LatticeEmbedding embed_primitively(const IntegerLattice& p) {
  const std::size_t n = p.rank();
  if (n > 4) throw Error(ErrorCode::RankUnsupported, "only rank <= 4 is supported");
  if (!p.is_even()) throw Error(ErrorCode::OddLattice, "lattice is not even");
  if (n > 0 && !p.is_nondegenerate()) throw Error(ErrorCode::DegenerateLattice, "lattice is degenerate");
  const IntegerLattice& l = k3_lattice();

  auto accept = [&](const IntMatrix& x) -> std::optional<LatticeEmbedding> {
    if (x.transpose() * l.gram() * x != p.gram()) return std::nullopt;
    if (!lattice::is_primitive(x)) return std::nullopt;
    return LatticeEmbedding(p, l, x);
  };

  if (n <= 3) {
    if (auto emb = accept(detail::hyperbolic_images(p.gram(), n))) return *emb;
    throw Error(ErrorCode::NoEmbeddingFound, "hyperbolic construction failed verification");
  }

  const IntVector v = detail::small_negative_vector(p);
  const IntMatrix basis = detail::complete_basis(v);
  const IntMatrix g = basis.transpose() * p.gram() * basis;
  const IntMatrix back = lattice::unimodular_inverse(basis);

  IntMatrix last(kRank, 1);
  for (std::size_t j = 0; j < 3; ++j) last(f_index(j), 0) = g(j, 3);
  const IntMatrix x = hstack(detail::hyperbolic_images(g.block(0, 0, 3, 3), 3), last);

  std::optional<LatticeEmbedding> found;
  auto try_w = [&](const IntVector& w, bool require_primitive) {
    if (require_primitive && lattice::gd(w) != 1) return true;
    IntMatrix candidate = x;
    for (std::size_t i = 0; i < 8; ++i) candidate(kE8Offset + i, 3) = w[i];
    found = accept(candidate * back);
    return !found;
  };
  const IntegerLattice e8 = e8_negative();
  enumeration::for_each_vector_of_norm(e8, g(3, 3), [&](const IntVector& w) { return try_w(w, true); });
  if (!found)
    enumeration::for_each_vector_of_norm(e8, g(3, 3), [&](const IntVector& w) { return try_w(w, false); });
  if (!found) throw Error(ErrorCode::NoEmbeddingFound, "no vector in E8(-1) completes the embedding");
  return *found;
}

/// Orthogonal complement in the ambient lattice of the image of a sublattice of P
/// (columns of `n_side` in P coordinates).
inline LatticeEmbedding transcendental(const LatticeEmbedding& emb_p, const IntMatrix& n_side) {
  const IntMatrix image = emb_p.matrix() * n_side;
  return LatticeEmbedding::from_columns(
      emb_p.codomain(), lattice::orthogonal_complement_basis(emb_p.codomain().gram(), image));
}

}  // namespace tcs::k3
