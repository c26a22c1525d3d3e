#pragma once

#include "tcs/core/matrix.hpp"

#include <optional>
#include <vector>

namespace tcs::lattice {

/// S = U * A * V with U, V unimodular and S diagonal, d1 | d2 | ... , all d >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < S.rows() && r < S.cols() && S(r, r) != 0) ++r;
    return r;
  }

  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < S.rows() && i < S.cols(); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

// Smallest nonzero |S(i,j)| over i >= r0 (or exactly row_only), j >= c0; ties by row then column.
struct Pivot {
  std::size_t row;
  std::size_t col;
};

inline std::optional<Pivot> smallest_entry(const IntMatrix& s, std::size_t r0, std::size_t c0) {
  std::optional<Pivot> best;
  Int best_abs = 0;
  for (std::size_t i = r0; i < s.rows(); ++i)
    for (std::size_t j = c0; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Int a = abs_value(s(i, j));
      if (!best || a < best_abs) {
        best = Pivot{i, j};
        best_abs = a;
      }
    }
  return best;
}

// Smallest nonzero entry within row t (cols >= t) and column t (rows >= t).
inline Pivot smallest_in_cross(const IntMatrix& s, std::size_t t) {
  Pivot best{t, t};
  Int best_abs = abs_value(s(t, t));
  auto consider = [&](std::size_t i, std::size_t j) {
    if (s(i, j) == 0) return;
    Int a = abs_value(s(i, j));
    if (best_abs == 0 || a < best_abs || (a == best_abs && (i < best.row || (i == best.row && j < best.col)))) {
      best = Pivot{i, j};
      best_abs = a;
    }
  };
  for (std::size_t i = t; i < s.rows(); ++i) consider(i, t);
  for (std::size_t j = t; j < s.cols(); ++j) consider(t, j);
  return best;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition out{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& s = out.S;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;

  auto move_to = [&](std::size_t t, detail::Pivot p) {
    s.swap_rows(t, p.row);
    u.swap_rows(t, p.row);
    s.swap_cols(t, p.col);
    v.swap_cols(t, p.col);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto pivot = detail::smallest_entry(s, t, t);
    if (!pivot) break;
    move_to(t, *pivot);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Int q = s(i, t) / s(t, t);
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Int q = s(t, j) / s(t, t);
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_to(t, detail::smallest_in_cross(s, t));
        continue;
      }
      // Divisibility: fold an offending row into row t and keep reducing.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < m && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      s.add_row_multiple(t, *offending, Int(1));
      u.add_row_multiple(t, *offending, Int(1));
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return out;
}

/// Row-style Hermite normal form of the row space: nonzero rows only, pivots positive,
/// entries above each pivot reduced into [0, pivot).
inline IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (!best || abs_value(h(i, c)) < abs_value(h(*best, c))) best = i;
      }
      if (!best) break;
      h.swap_rows(r, *best);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Int q = h(i, c) / h(r, c);
        h.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) h.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return h.block(0, 0, r, h.cols());
}

/// Column-style Hermite basis of the lattice spanned by the columns of `m`.
inline IntMatrix hermite_columns(const IntMatrix& m) {
  if (m.cols() == 0) return IntMatrix(m.rows(), 0);
  return hermite_rows(m.transpose()).transpose();
}

/// Saturated basis (as columns, Hermite-canonical) of {x : A x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(n);
  auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  if (r == n) return IntMatrix(n, 0);
  return hermite_columns(snf.V.columns(r, n - r));
}

/// Fraction-free (Bareiss) determinant.
inline Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const IntMatrix& a) {
  RationalMatrix m = to_rational(a);
  return rref_in_place(m).size();
}

/// Solution set of A x = b over Q: a particular solution (free variables zero) plus a
/// basis of the rational null space. Empty optional when inconsistent.
struct RationalSolution {
  RationalVector particular;
  std::vector<RationalVector> nullspace;
};

inline std::optional<RationalSolution> solve_rational(const RationalMatrix& a,
                                                      const RationalVector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  RationalMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  RationalSolution sol;
  sol.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    sol.particular[pivots[k]] = aug(k, n);
    is_pivot[pivots[k]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -aug(k, f);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] >= n)
    throw Error(ErrorCode::DegenerateLattice, "matrix is singular");
  return aug.block(0, n, n, n);
}

/// Inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  RationalMatrix inv = inverse(to_rational(a));
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_integer(inv(i, j))) throw Error(ErrorCode::InvalidInput, "matrix is not unimodular");
      out(i, j) = numerator(inv(i, j));
    }
  return out;
}

}  // namespace tcs::lattice
