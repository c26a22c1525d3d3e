#pragma once

#include "tcs/core/error.hpp"
#include "tcs/enumeration/enumerate.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/matching/configuration.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace tcs::matching {

using enumeration::VectorConstraint;

/// Which arithmetic checklist certifies a family for a given polarizing lattice.
enum class GenericityKind {
  QuadricBlowup,         // quadric blown up in a rational sextic (k = 3)
  ProjectiveBlowup,      // P^3 blown up in a curve, G = 4H - E
  ProductP1P2,           // P^1 x P^2 with classes G, H
  OrthogonalOnly,        // no checklist beyond the case Lambda = N
};

inline const char* to_string(GenericityKind k) {
  switch (k) {
    case GenericityKind::QuadricBlowup: return "quadric-blowup";
    case GenericityKind::ProjectiveBlowup: return "p3-blowup";
    case GenericityKind::ProductP1P2: return "p1xp2";
    case GenericityKind::OrthogonalOnly: return "orthogonal-only";
  }
  return "?";
}

/// Checklist used for each family of the shipped catalog.
inline GenericityKind genericity_kind_for(const std::string& family_id) {
  if (family_id == "Y1") return GenericityKind::QuadricBlowup;
  if (family_id == "Y2" || family_id == "Y3") return GenericityKind::ProjectiveBlowup;
  if (family_id == "Y4") return GenericityKind::ProductP1P2;
  return GenericityKind::OrthogonalOnly;
}

/// One hypothesis: either a direct predicate (no constraints) or "no vector satisfies
/// all constraints".
struct Hypothesis {
  std::string id;
  std::string description;
  std::vector<VectorConstraint> constraints;
  bool holds = false;
  std::optional<IntVector> witness;
  std::string error;
};

struct GenericityReport {
  std::string rule_id;
  bool pass = false;
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> notes;
};

inline Hypothesis direct_hypothesis(std::string id, std::string description, bool holds) {
  Hypothesis h;
  h.id = std::move(id);
  h.description = std::move(description);
  h.holds = holds;
  return h;
}

inline Hypothesis no_vector_hypothesis(const IntegerLattice& lambda, std::string id,
                                       std::vector<VectorConstraint> constraints) {
  Hypothesis h;
  h.id = std::move(id);
  h.constraints = std::move(constraints);
  h.description = "no D with";
  for (std::size_t i = 0; i < h.constraints.size(); ++i)
    h.description += (i ? ", " : " ") + h.constraints[i].describe();
  try {
    h.witness = enumeration::exists_violating_vector(lambda, h.constraints);
    h.holds = !h.witness.has_value();
  } catch (const Error& e) {
    h.holds = false;
    h.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return h;
}

namespace detail {

inline IntVector basis_vector(std::size_t n, std::size_t i) {
  IntVector v(n, Int(0));
  v[i] = 1;
  return v;
}

inline IntVector combine(const Int& a, const IntVector& x, const Int& b, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

inline void very_ample_hypotheses(const IntegerLattice& lambda, const IntVector& h, const std::string& name,
                                  std::vector<Hypothesis>& out) {
  out.push_back(direct_hypothesis("norm", name + "^2 >= 4", lambda.norm(h) >= 4));
  out.push_back(direct_hypothesis("primitive", name + " primitive", lattice::gd(h) == 1));
  out.push_back(no_vector_hypothesis(lambda, "i",
                                     {VectorConstraint::pairing_equals(h, 2, name), VectorConstraint::norm_equals(0)}));
  out.push_back(no_vector_hypothesis(lambda, "ii",
                                     {VectorConstraint::pairing_equals(h, 0, name), VectorConstraint::norm_equals(-2)}));
}

}  // namespace detail

/// Marked vectors live at fixed basis positions: for two-dimensional N the basis is (G, H)
/// and occupies positions 0 and 1 of Lambda.
inline GenericityReport genericity_check(GenericityKind kind, const IntegerLattice& lambda, std::size_t n_rank) {
  GenericityReport report;
  const std::size_t r = lambda.rank();
  if (r == n_rank) {
    report.rule_id = "beauville";
    report.pass = true;
    report.notes.push_back("Lambda equals N, so the family is generic for it");
    return report;
  }
  report.rule_id = to_string(kind);
  auto sig = lattice::signature(lambda);
  if (sig.positive != 1 || sig.zero != 0) {
    report.notes.push_back("Lambda does not have signature (1, rank - 1)");
    return report;
  }
  auto& hs = report.hypotheses;
  switch (kind) {
    case GenericityKind::QuadricBlowup:
    case GenericityKind::ProjectiveBlowup: {
      if (n_rank != 2) throw Error(ErrorCode::InvalidInput, "blowup checklists need N of rank 2");
      const Int k = kind == GenericityKind::QuadricBlowup ? 3 : 4;
      const IntVector g = detail::basis_vector(r, 0);
      const IntVector h = detail::basis_vector(r, 1);
      const IntVector e = detail::combine(k, h, -1, g);
      const Int he = lambda.pair(h, e);
      detail::very_ample_hypotheses(lambda, h, "H", hs);
      if (kind == GenericityKind::QuadricBlowup) {
        hs.push_back(no_vector_hypothesis(
            lambda, "iii", {VectorConstraint::pairing_equals(h, 3, "H"), VectorConstraint::norm_equals(0)}));
        hs.push_back(no_vector_hypothesis(lambda, "iv",
                                          {VectorConstraint::pairing_range(h, 0, he, "H"),
                                           VectorConstraint::norm_equals(-2),
                                           VectorConstraint::pairing_less_than(e, 0, "E")}));
      } else {
        hs.push_back(no_vector_hypothesis(lambda, "iii",
                                          {VectorConstraint::norm_equals(-2),
                                           VectorConstraint::pairing_range(h, 0, he, "H"),
                                           VectorConstraint::pairing_less_than(e, 0, "E")}));
        report.notes.push_back(
            "condition iii (E nef) is evaluated as: no D with D^2 = -2, 0 < H.D < H.E, E.D < 0; a (-2)-curve "
            "meeting E negatively satisfies these bounds");
        const Int ee = lambda.norm(e);
        auto iv = no_vector_hypothesis(lambda, "iv",
                                       {VectorConstraint::norm_equals(-2),
                                        VectorConstraint::pairing_equals(e, ee / 2 - 1, "E")});
        if (iv.witness) {
          IntVector diff = detail::combine(1, e, -1, *iv.witness);
          if (lambda.norm(diff) != 0) throw Error(ErrorCode::Inconsistent, "(E - D)^2 != 0 on a witness");
        }
        hs.push_back(std::move(iv));
      }
      break;
    }
    case GenericityKind::ProductP1P2: {
      if (n_rank != 2) throw Error(ErrorCode::InvalidInput, "P^1 x P^2 checklist needs N of rank 2");
      const IntVector g = detail::basis_vector(r, 0);
      const IntVector h = detail::basis_vector(r, 1);
      const IntVector a = detail::combine(1, g, 1, h);
      detail::very_ample_hypotheses(lambda, a, "(G+H)", hs);
      hs.push_back(no_vector_hypothesis(lambda, "iii",
                                        {VectorConstraint::pairing_range(a, 0, 3, "(G+H)"),
                                         VectorConstraint::norm_equals(-2),
                                         VectorConstraint::pairing_less_than(g, 0, "G")}));
      hs.push_back(no_vector_hypothesis(lambda, "iv",
                                        {VectorConstraint::pairing_range(a, 0, 5, "(G+H)"),
                                         VectorConstraint::norm_equals(-2),
                                         VectorConstraint::pairing_less_than(h, 0, "H")}));
      break;
    }
    case GenericityKind::OrthogonalOnly:
      report.notes.push_back("no checklist is available for this family when Lambda is larger than N");
      return report;
  }
  report.pass = std::all_of(hs.begin(), hs.end(), [](const Hypothesis& h) { return h.holds; });
  return report;
}

/// Conditions for H to be very ample on a Lambda-polarized K3.
inline bool very_ample(const IntegerLattice& lambda, const IntVector& h) {
  std::vector<Hypothesis> hs;
  detail::very_ample_hypotheses(lambda, h, "H", hs);
  return std::all_of(hs.begin(), hs.end(), [](const Hypothesis& x) { return x.holds; });
}

/// Whether E (with E.H > 0, H very ample) is represented by a smooth curve, by the sign of E^2.
/// The nefness condition E.D < 0 is evaluated over 0 < H.D < H.E.
inline bool smooth_representative(const IntegerLattice& lambda, const IntVector& e, const IntVector& h) {
  const Int he = lambda.pair(h, e);
  if (he <= 0) return false;
  const Int ee = lambda.norm(e);
  const std::vector<VectorConstraint> not_nef = {VectorConstraint::norm_equals(-2),
                                                 VectorConstraint::pairing_range(h, 0, he, "H"),
                                                 VectorConstraint::pairing_less_than(e, 0, "E")};
  if (ee < -2) return false;
  if (ee == -2 || ee == 0) return !enumeration::exists_violating_vector(lambda, not_nef);
  if (enumeration::exists_violating_vector(lambda, not_nef)) return false;
  const std::vector<VectorConstraint> monogonal = {VectorConstraint::norm_equals(-2),
                                                   VectorConstraint::pairing_equals(e, ee / 2 - 1, "E")};
  return !enumeration::exists_violating_vector(lambda, monogonal);
}

struct ConfigurationGenericity {
  GenericityReport plus;
  GenericityReport minus;
  bool pass() const { return plus.pass && minus.pass; }
};

inline ConfigurationGenericity genericity_check(const Configuration& cfg, const DerivedLattices& derived) {
  return {genericity_check(genericity_kind_for(cfg.plus.family_id), derived.Lambda_plus, cfg.rank_plus()),
          genericity_check(genericity_kind_for(cfg.minus.family_id), derived.Lambda_minus, cfg.rank_minus())};
}

}  // namespace tcs::matching
