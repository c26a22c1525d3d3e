#pragma once

#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/lattice/lattice.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace tcs::blocks {

using lattice::IntegerLattice;

/// Catalog record of a deformation family of semi-Fano threefolds Y. The Picard Gram
/// uses the pairing (a, b) -> (-K_Y) . a . b.
struct SemiFanoFamily {
  std::string id;
  std::string name;
  IntegerLattice picard;
  std::vector<std::string> basis_labels;
  std::vector<IntVector> ample_cone;
  IntVector antiK;
  IntVector c2_pairings;
  Int chi = 0;
  Int b3 = 0;
  bool h3_torsion_free = true;
  std::string provenance;

  std::size_t rank() const { return picard.rank(); }
  Int anticanonical_degree() const { return picard.norm(antiK); }
};

/// Cohomological profile of the block Z obtained by blowing up Y in the base curve of an
/// anticanonical pencil. H^2(Z) has basis (pullbacks of the N basis, exceptional class).
struct BuildingBlock {
  std::string family_id;
  IntegerLattice N;
  std::vector<std::string> basis_labels;
  std::vector<IntVector> ample_cone;
  IntVector antiK;
  IntVector c2Z;
  Int chiZ = 0;
  Int b3Z = 0;
  Int genus = 0;
  std::size_t k_rank = 1;
  bool h3_torsion_free = true;

  std::size_t rank() const { return N.rank(); }

  /// Restriction H^2(Z) -> N to a fibre: basis vectors map to themselves, the
  /// exceptional class to -K_Y.
  IntMatrix restriction() const {
    const std::size_t r = rank();
    IntMatrix rho(r, r + 1);
    for (std::size_t i = 0; i < r; ++i) {
      rho(i, i) = 1;
      rho(i, r) = antiK[i];
    }
    return rho;
  }

  /// c1(Z) = pullback of -K_Y minus the exceptional class; spans the kernel of restriction.
  IntVector c1() const {
    IntVector c = antiK;
    c.push_back(Int(-1));
    return c;
  }

  Int c1_dot_c2() const { return dot(c1(), c2Z); }
};

/// Blowup Y of a Picard-rank-1 Fano Y' of index r (hyperplane class H) in a smooth curve
/// of degree d and genus g, written in the basis (G, H) with G = kH - E.
/// `degree` is (-K_{Y'})^3.
inline SemiFanoFamily blowup_rank1(const Int& degree, const Int& index, const Int& chi_base,
                                   const Int& b3_base, const Int& curve_d, const Int& curve_g,
                                   const Int& k, std::string id = {}, std::string name = {}) {
  if (index <= 0 || degree <= 0 || k <= 0 || curve_g < 0)
    throw Error(ErrorCode::InvalidInput, "blowup inputs must be positive");
  if (curve_d < 1) throw Error(ErrorCode::NotWeakFano, "curve degree must be positive");
  if (degree % (index * index) != 0)
    throw Error(ErrorCode::NonIntegralDegree, "(-K)^3 is not divisible by r^2");
  if (24 % index != 0) throw Error(ErrorCode::NonIntegralDegree, "index does not divide 24");

  // (H, E) data, then G = kH - E.
  const Int hh = degree / (index * index);
  const Int he = curve_d;
  const Int ee = 2 * curve_g - 2;
  const Int gg = k * k * hh - 2 * k * he + ee;
  const Int gh = k * hh - he;
  const Int h_c2 = 24 / index + curve_d;
  const Int e_c2 = index * curve_d;

  SemiFanoFamily y;
  y.id = std::move(id);
  y.name = std::move(name);
  y.picard = IntegerLattice(IntMatrix::from_rows({{gg, gh}, {gh, hh}}), {"G", "H"});
  y.basis_labels = {"G", "H"};
  y.ample_cone = {{Int(1), Int(0)}, {Int(0), Int(1)}};
  y.antiK = {Int(1), Int(index - k)};
  y.c2_pairings = {k * h_c2 - e_c2, h_c2};
  y.chi = chi_base + 2 - 2 * curve_g;
  y.b3 = b3_base + 2 * curve_g;
  if (y.anticanonical_degree() <= 0) throw Error(ErrorCode::NotWeakFano, "(-K)^3 <= 0");
  return y;
}

struct ValidationIssue {
  std::string family_id;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> warnings;

  bool ok() const { return issues.empty(); }

  std::string summary() const {
    std::string s;
    for (const auto& i : issues) s += i.family_id + ": [" + i.rule + "] " + i.message + "\n";
    return s;
  }
};

inline void validate_family(const SemiFanoFamily& y, ValidationReport& report) {
  auto fail = [&](const std::string& rule, const std::string& msg) {
    report.issues.push_back({y.id, rule, msg});
  };
  const std::size_t r = y.rank();
  if (r == 0) {
    fail("shape", "empty Picard lattice");
    return;
  }
  bool shapes = true;
  if (y.antiK.size() != r) shapes = false;
  if (y.c2_pairings.size() != r) shapes = false;
  if (!y.basis_labels.empty() && y.basis_labels.size() != r) shapes = false;
  for (const auto& g : y.ample_cone)
    if (g.size() != r) shapes = false;
  if (!shapes) {
    fail("shape", "vector lengths do not match the Picard rank");
    return;
  }
  if (y.ample_cone.empty()) fail("shape", "ample cone has no generators");
  if (!y.picard.is_nondegenerate()) fail("nondegenerate", "Picard Gram is degenerate");
  if (lattice::gd(y.antiK) != 1) fail("antiK-primitive", "anticanonical class is not primitive");
  const Int c1c2 = dot(y.antiK, y.c2_pairings);
  if (c1c2 != 24) fail("c1c2=24", "c1.c2 = " + c1c2.str());
  const Int deg = y.anticanonical_degree();
  if (deg % 2 != 0 || deg < 2) fail("anticanonical-degree", "(-K)^3 = " + deg.str() + " is not 2g-2 with g >= 2");
  if (y.b3 < 0 || y.b3 % 2 != 0) fail("b3", "b3 must be even and nonnegative");
}

inline ValidationReport validate_catalog(const std::vector<SemiFanoFamily>& families) {
  ValidationReport report;
  std::set<std::string> seen;
  for (const auto& y : families) {
    if (y.id.empty()) report.issues.push_back({y.id, "unique-id", "missing id"});
    else if (!seen.insert(y.id).second) report.issues.push_back({y.id, "unique-id", "duplicate id"});
    validate_family(y, report);
  }
  if (families.empty()) report.warnings.push_back("catalog is empty");
  return report;
}

inline void require_valid(const std::vector<SemiFanoFamily>& families) {
  auto report = validate_catalog(families);
  if (!report.ok()) throw Error(ErrorCode::ValidationError, report.summary());
}

inline BuildingBlock derive_block(const SemiFanoFamily& y) {
  ValidationReport report;
  validate_family(y, report);
  if (!report.ok()) throw Error(ErrorCode::ValidationError, report.summary());

  const std::size_t r = y.rank();
  const Int deg = y.anticanonical_degree();
  const IntVector k_pair = y.picard.gram() * y.antiK;

  BuildingBlock z;
  z.family_id = y.id;
  z.N = y.picard;
  z.basis_labels = y.basis_labels;
  z.ample_cone = y.ample_cone;
  z.antiK = y.antiK;
  z.genus = deg / 2 + 1;
  z.chiZ = y.chi + 2 - 2 * z.genus;
  z.b3Z = y.b3 + 2 * z.genus;
  z.h3_torsion_free = y.h3_torsion_free;
  z.c2Z.resize(r + 1);
  for (std::size_t i = 0; i < r; ++i) z.c2Z[i] = y.c2_pairings[i] + k_pair[i];
  z.c2Z[r] = deg;
  return z;
}

inline const SemiFanoFamily& find_family(const std::vector<SemiFanoFamily>& catalog, const std::string& id) {
  for (const auto& y : catalog)
    if (y.id == id) return y;
  throw Error(ErrorCode::InvalidInput, "unknown family id '" + id + "'");
}

}  // namespace tcs::blocks
