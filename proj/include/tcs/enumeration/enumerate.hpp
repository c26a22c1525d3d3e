#pragma once

#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/lattice/normal_forms.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tcs::enumeration {

using lattice::IntegerLattice;

/// Q(y) = sum_i diag[i] * (y_i + sum_{j>i} mu(i,j) y_j)^2 for a positive definite form.
struct CompletedSquares {
  RationalVector diag;
  RationalMatrix mu;
};

inline CompletedSquares complete_squares(const RationalMatrix& form) {
  const std::size_t n = form.rows();
  RationalMatrix q = form;
  CompletedSquares cs{RationalVector(n), RationalMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw Error(ErrorCode::IndefiniteLattice, "form is not positive definite");
    cs.diag[i] = q(i, i);
    for (std::size_t j = i + 1; j < n; ++j) cs.mu(i, j) = q(i, j) / q(i, i);
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i + 1; k < n; ++k) q(j, k) -= cs.diag[i] * cs.mu(i, j) * cs.mu(i, k);
  }
  return cs;
}

/// Visits every integer t with (t - center)^T form (t - center) <= radius. The visitor
/// receives t and the exact value of the form and returns false to stop early.
/// Returns false iff the visitor stopped the enumeration.
using EllipsoidVisitor = std::function<bool(const IntVector&, const Rational&)>;

inline bool enumerate_ellipsoid(const RationalMatrix& form, const RationalVector& center,
                                const Rational& radius, const EllipsoidVisitor& visit) {
  const std::size_t n = form.rows();
  if (radius < 0) return true;
  if (n == 0) return visit(IntVector{}, Rational(0));
  const CompletedSquares cs = complete_squares(form);
  IntVector t(n);

  std::function<bool(std::size_t, const Rational&)> recurse = [&](std::size_t level,
                                                                  const Rational& remaining) {
    const std::size_t i = level;
    Rational z = center[i];
    for (std::size_t j = i + 1; j < n; ++j) z -= cs.mu(i, j) * (Rational(t[j]) - center[j]);
    const Rational& d = cs.diag[i];
    auto fits = [&](const Int& x) {
      Rational y = Rational(x) - z;
      return d * y * y <= remaining;
    };
    Int lo = floor(z);
    Int hi = lo + 1;
    if (!fits(lo) && !fits(hi)) return true;
    Int first = fits(lo) ? lo : hi;
    while (fits(first - 1)) --first;
    Int last = fits(hi) ? hi : lo;
    while (fits(last + 1)) ++last;
    for (Int x = first; x <= last; ++x) {
      t[i] = x;
      Rational y = Rational(x) - z;
      Rational rest = remaining - d * y * y;
      if (i == 0) {
        if (!visit(t, radius - rest)) return false;
      } else if (!recurse(i - 1, rest)) {
        return false;
      }
    }
    return true;
  };
  return recurse(n - 1, radius);
}

namespace detail {

inline bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct DefiniteForm {
  RationalMatrix form;
  Int target;
};

inline DefiniteForm definite_form(const IntegerLattice& lat, const Int& n) {
  auto sig = lattice::signature(lat);
  if (sig.positive == lat.rank() && n >= 0) return {to_rational(lat.gram()), n};
  if (sig.negative == lat.rank() && n <= 0) return {to_rational(-lat.gram()), Int(-n)};
  throw Error(ErrorCode::IndefiniteLattice,
              "norm enumeration needs a definite lattice with a norm of matching sign");
}

}  // namespace detail

/// Visits vectors v with v.v == n in a definite lattice; the visitor returns false to stop.
inline bool for_each_vector_of_norm(const IntegerLattice& lat, const Int& n,
                                    const std::function<bool(const IntVector&)>& visit) {
  auto df = detail::definite_form(lat, n);
  RationalVector center(lat.rank(), Rational(0));
  const Rational target(df.target);
  return enumerate_ellipsoid(df.form, center, target,
                             [&](const IntVector& v, const Rational& value) {
                               return value == target ? visit(v) : true;
                             });
}

/// All v with v.v == n, lexicographically ordered (closed under negation).
inline std::vector<IntVector> definite_vectors_of_norm(const IntegerLattice& lat, const Int& n) {
  std::vector<IntVector> out;
  for_each_vector_of_norm(lat, n, [&](const IntVector& v) {
    out.push_back(v);
    return true;
  });
  std::sort(out.begin(), out.end(), detail::lex_less);
  return out;
}

/// All D with v.D == c and D.D == n in a lattice of signature (1, rank-1), where v.v > 0.
/// The solutions of v.D = c form D0 + ker, ker = v^perp is negative definite, so the
/// quadric is a finite ellipsoid in ker coordinates.
inline std::vector<IntVector> solve_pairing_norm(const IntegerLattice& lat, const IntVector& v,
                                                 const Int& c, const Int& n) {
  const std::size_t r = lat.rank();
  if (v.size() != r) throw Error(ErrorCode::ShapeMismatch, "axis vector has wrong length");
  if (lat.norm(v) <= 0) throw Error(ErrorCode::NonpositiveAxis, "axis vector must have positive norm");
  auto sig = lattice::signature(lat);
  if (sig.positive != 1 || sig.zero != 0)
    throw Error(ErrorCode::BadSignature, "lattice must have signature (1, rank - 1)");

  const IntVector functional = lat.gram() * v;
  IntMatrix row(1, r);
  for (std::size_t j = 0; j < r; ++j) row(0, j) = functional[j];
  auto snf = lattice::smith_normal_form(row);
  const Int g = snf.S(0, 0);
  if (c % g != 0) return {};
  const Int y1 = snf.U(0, 0) * c / g;
  IntVector base(r);
  for (std::size_t i = 0; i < r; ++i) base[i] = snf.V(i, 0) * y1;

  std::vector<IntVector> out;
  if (r == 1) {
    if (lat.norm(base) == n) out.push_back(base);
    return out;
  }

  const IntMatrix kernel = snf.V.columns(1, r - 1);
  const IntMatrix restricted = kernel.transpose() * lat.gram() * kernel;
  const RationalMatrix form = to_rational(-restricted);
  const IntVector linear = kernel.transpose() * (lat.gram() * base);
  const RationalMatrix form_inv = lattice::inverse(form);
  RationalVector rlinear(linear.begin(), linear.end());
  RationalVector center = form_inv * rlinear;
  Rational radius = Rational(lat.norm(base) - n);
  for (std::size_t i = 0; i < center.size(); ++i) radius += rlinear[i] * center[i];

  enumerate_ellipsoid(form, center, radius, [&](const IntVector& t, const Rational& value) {
    if (value != radius) return true;
    IntVector d = base;
    const IntVector shift = kernel * t;
    for (std::size_t i = 0; i < r; ++i) d[i] += shift[i];
    out.push_back(std::move(d));
    return true;
  });
  std::sort(out.begin(), out.end(), detail::lex_less);
  return out;
}

enum class ConstraintKind { NormEquals, PairingEquals, PairingLessThan, PairingGreaterThan, PairingRange };

/// One hypothesis atom: D.D = value, or a condition on reference.D.
/// PairingRange is strict on both ends: lower < reference.D < upper.
struct VectorConstraint {
  ConstraintKind kind = ConstraintKind::NormEquals;
  IntVector reference;
  Int value = 0;  // lower bound for PairingRange
  Int upper = 0;
  std::string reference_name;

  static VectorConstraint norm_equals(Int n) { return {ConstraintKind::NormEquals, {}, std::move(n), 0, {}}; }
  static VectorConstraint pairing_equals(IntVector v, Int c, std::string name = "v") {
    return {ConstraintKind::PairingEquals, std::move(v), std::move(c), 0, std::move(name)};
  }
  static VectorConstraint pairing_less_than(IntVector v, Int c, std::string name = "v") {
    return {ConstraintKind::PairingLessThan, std::move(v), std::move(c), 0, std::move(name)};
  }
  static VectorConstraint pairing_greater_than(IntVector v, Int c, std::string name = "v") {
    return {ConstraintKind::PairingGreaterThan, std::move(v), std::move(c), 0, std::move(name)};
  }
  static VectorConstraint pairing_range(IntVector v, Int lower, Int upper, std::string name = "v") {
    if (!(lower < upper)) throw Error(ErrorCode::InvalidInput, "pairing range needs lower < upper");
    return {ConstraintKind::PairingRange, std::move(v), std::move(lower), std::move(upper), std::move(name)};
  }

  bool is_satisfied(const IntegerLattice& lat, const IntVector& d) const {
    if (kind == ConstraintKind::NormEquals) return lat.norm(d) == value;
    const Int p = lat.pair(reference, d);
    switch (kind) {
      case ConstraintKind::PairingEquals: return p == value;
      case ConstraintKind::PairingLessThan: return p < value;
      case ConstraintKind::PairingGreaterThan: return p > value;
      case ConstraintKind::PairingRange: return value < p && p < upper;
      default: return false;
    }
  }

  std::string describe() const {
    const std::string lhs = reference_name + ".D";
    switch (kind) {
      case ConstraintKind::NormEquals: return "D^2 = " + value.str();
      case ConstraintKind::PairingEquals: return lhs + " = " + value.str();
      case ConstraintKind::PairingLessThan: return lhs + " < " + value.str();
      case ConstraintKind::PairingGreaterThan: return lhs + " > " + value.str();
      case ConstraintKind::PairingRange: return value.str() + " < " + lhs + " < " + upper.str();
    }
    return {};
  }
};

namespace detail {

struct SearchPlan {
  const VectorConstraint* norm = nullptr;
  const VectorConstraint* axis = nullptr;
  std::vector<Int> pairing_values;
};

inline SearchPlan plan_search(const IntegerLattice& lat, const std::vector<VectorConstraint>& constraints) {
  SearchPlan plan;
  std::size_t norm_count = 0;
  for (const auto& c : constraints)
    if (c.kind == ConstraintKind::NormEquals) {
      ++norm_count;
      plan.norm = &c;
    }
  if (norm_count != 1)
    throw Error(ErrorCode::InvalidInput, "exactly one norm constraint is required");
  std::optional<Int> best_count;
  for (const auto& c : constraints) {
    if (c.kind != ConstraintKind::PairingEquals && c.kind != ConstraintKind::PairingRange) continue;
    if (c.reference.size() != lat.rank()) throw Error(ErrorCode::ShapeMismatch, "constraint vector length");
    if (lat.norm(c.reference) <= 0) continue;
    Int count = c.kind == ConstraintKind::PairingEquals ? Int(1) : Int(c.upper - c.value - 1);
    if (!best_count || count < *best_count) {
      best_count = count;
      plan.axis = &c;
    }
  }
  if (!plan.axis)
    throw Error(ErrorCode::UnboundedSearch,
                "no pairing_equals/pairing_range constraint against a positive-norm vector");
  if (plan.axis->kind == ConstraintKind::PairingEquals) {
    plan.pairing_values.push_back(plan.axis->value);
  } else {
    for (Int x = plan.axis->value + 1; x < plan.axis->upper; ++x) plan.pairing_values.push_back(x);
  }
  return plan;
}

}  // namespace detail

/// Every vector satisfying all constraints, ordered by bounding pairing value then
/// lexicographically. `limit` of 0 means no limit.
inline std::vector<IntVector> violating_vectors(const IntegerLattice& lat,
                                                const std::vector<VectorConstraint>& constraints,
                                                std::size_t limit = 0) {
  auto plan = detail::plan_search(lat, constraints);
  std::vector<IntVector> out;
  for (const auto& c : plan.pairing_values) {
    for (auto& d : solve_pairing_norm(lat, plan.axis->reference, c, plan.norm->value)) {
      bool all = std::all_of(constraints.begin(), constraints.end(),
                             [&](const VectorConstraint& k) { return k.is_satisfied(lat, d); });
      if (!all) continue;
      out.push_back(std::move(d));
      if (limit != 0 && out.size() >= limit) return out;
    }
  }
  return out;
}

inline std::optional<IntVector> exists_violating_vector(const IntegerLattice& lat,
                                                        const std::vector<VectorConstraint>& constraints) {
  auto found = violating_vectors(lat, constraints, 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace tcs::enumeration
