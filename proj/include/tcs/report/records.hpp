#pragma once

#include "tcs/blocks/catalog.hpp"
#include "tcs/invariants/invariants.hpp"
#include "tcs/matching/configuration.hpp"
#include "tcs/matching/genericity.hpp"
#include "tcs/report/json.hpp"

#include <string>
#include <vector>

namespace tcs::report {

/// Contents of a configuration file: {"plus": id, "minus": id, "D": rows}.
struct ConfigSpec {
  std::string plus;
  std::string minus;
  IntMatrix D;
};

inline ConfigSpec parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "configuration must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "plus" && key != "minus" && key != "D")
      throw Error(ErrorCode::ParseError, "unknown configuration field '" + key + "'");
  if (!j.contains("plus") || !j.contains("minus") || !j.contains("D"))
    throw Error(ErrorCode::ParseError, "configuration needs plus, minus and D");
  if (!j["plus"].is_string() || !j["minus"].is_string())
    throw Error(ErrorCode::ParseError, "plus and minus must be family ids");
  return {j["plus"].get<std::string>(), j["minus"].get<std::string>(), int_matrix_from_json(j["D"], "D")};
}

inline ConfigSpec load_config(const std::string& path) { return parse_config(blocks::read_text_file(path)); }

inline matching::Configuration build_configuration(const std::vector<blocks::SemiFanoFamily>& catalog,
                                                   const ConfigSpec& spec) {
  const auto plus = blocks::derive_block(blocks::find_family(catalog, spec.plus));
  const auto minus = blocks::derive_block(blocks::find_family(catalog, spec.minus));
  IntMatrix d = spec.D;
  if (d.rows() == 0) d = IntMatrix(plus.rank(), minus.rank());
  return matching::assemble_configuration(plus, minus, d);
}

inline Json residue_json(const Int& value, const Int& modulus) {
  Json j;
  j["value"] = to_json(value);
  j["modulus"] = to_json(modulus);
  return j;
}

inline Json to_json(const invariants::TcsInvariants& inv) {
  Json j;
  j["b2"] = to_json(inv.b2);
  j["b3"] = to_json(inv.b3);
  j["torsion_free"] = inv.torsion_free;
  j["m"] = to_json(inv.m);
  j["m_plus"] = to_json(inv.m_plus);
  j["m_minus"] = to_json(inv.m_minus);
  j["m_tilde"] = to_json(inv.m_tilde);
  j["m_hat"] = to_json(inv.m_hat);
  j["nu"] = residue_json(inv.nu, 48);
  j["xi"] = residue_json(inv.xi, inv.xi_modulus);
  Json mu = residue_json(inv.mu, inv.mu_modulus);
  mu["vacuous"] = inv.mu_vacuous;
  j["mu"] = mu;
  j["chiW"] = to_json(inv.chiW);
  j["sigmaW"] = to_json(inv.sigmaW);
  j["integral_u_squared"] = tcs::to_string(inv.integral_u_squared);
  return j;
}

inline Json to_json(const matching::GenericityReport& r) {
  Json j;
  j["rule"] = r.rule_id;
  j["pass"] = r.pass;
  Json hs = Json::array();
  for (const auto& h : r.hypotheses) {
    Json x;
    x["id"] = h.id;
    x["statement"] = h.description;
    x["holds"] = h.holds;
    if (h.witness) x["witness"] = to_json(*h.witness);
    if (!h.error.empty()) x["error"] = h.error;
    hs.push_back(x);
  }
  j["hypotheses"] = hs;
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const matching::Configuration& cfg) {
  Json j;
  j["plus"] = cfg.plus.family_id;
  j["minus"] = cfg.minus.family_id;
  j["D"] = to_json(cfg.D);
  j["kind"] = matching::to_string(cfg.kind);
  j["P"] = to_json(cfg.P.gram());
  return j;
}

inline Json to_json(const matching::DerivedLattices& d) {
  Json j;
  j["A_plus"] = to_json(d.A_plus.transpose());
  j["A_minus"] = to_json(d.A_minus.transpose());
  j["Lambda_plus"] = to_json(d.Lambda_plus.gram());
  j["Lambda_minus"] = to_json(d.Lambda_minus.gram());
  j["rank_N_minus_cap_T_plus"] = d.rank_nminus_cap_tplus;
  j["rank_N_plus_cap_T_minus"] = d.rank_nplus_cap_tminus;
  return j;
}

inline Json to_json(const invariants::TorsionReport& t) {
  Json j;
  j["L_mod_P"] = t.ambient_mod_P.to_string();
  j["L_mod_Nplus_Tminus"] = t.ambient_mod_nplus_tminus.to_string();
  j["L_mod_Nminus_Tplus"] = t.ambient_mod_nminus_tplus.to_string();
  j["h3_plus_torsion_free"] = t.h3_plus_torsion_free;
  j["h3_minus_torsion_free"] = t.h3_minus_torsion_free;
  j["offending"] = t.offending;
  return j;
}

/// Full record for one configuration: configuration, derived data, genericity, invariants.
inline Json evaluation_json(const matching::Configuration& cfg, const invariants::Evaluation& ev,
                            const matching::ConfigurationGenericity& gen) {
  Json j;
  j["configuration"] = to_json(cfg);
  j["derived"] = to_json(ev.derived);
  j["torsion"] = to_json(ev.torsion);
  Json g;
  g["plus"] = to_json(gen.plus);
  g["minus"] = to_json(gen.minus);
  g["pass"] = gen.pass();
  j["genericity"] = g;
  j["invariants"] = to_json(ev.invariants);
  return j;
}

}  // namespace tcs::report
