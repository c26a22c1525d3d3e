#pragma once

#include "tcs/blocks/building_block.hpp"
#include "tcs/core/error.hpp"
#include "tcs/report/json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tcs::blocks {

using report::Json;

inline const std::vector<std::string>& catalog_fields() {
  static const std::vector<std::string> fields = {
      "id", "name", "picard", "basis_labels", "ample_cone", "antiK", "c2_pairings",
      "chi", "b3", "h3_torsion_free", "provenance"};
  return fields;
}

inline SemiFanoFamily family_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "catalog record must be an object");
  const auto& fields = catalog_fields();
  for (const auto& [key, _] : j.items())
    if (std::find(fields.begin(), fields.end(), key) == fields.end())
      throw Error(ErrorCode::ParseError, "unknown catalog field '" + key + "'");
  for (const auto& f : fields)
    if (!j.contains(f)) throw Error(ErrorCode::ParseError, "catalog record is missing '" + f + "'");

  auto text = [&](const char* key) {
    if (!j.at(key).is_string()) throw Error(ErrorCode::ParseError, std::string(key) + ": expected a string");
    return j.at(key).get<std::string>();
  };

  SemiFanoFamily y;
  y.id = text("id");
  y.name = text("name");
  y.provenance = text("provenance");
  if (!j.at("basis_labels").is_array()) throw Error(ErrorCode::ParseError, "basis_labels: expected an array");
  for (const auto& l : j.at("basis_labels")) {
    if (!l.is_string()) throw Error(ErrorCode::ParseError, "basis_labels: expected strings");
    y.basis_labels.push_back(l.get<std::string>());
  }
  IntMatrix gram = report::int_matrix_from_json(j.at("picard"), y.id + ".picard");
  if (!gram.is_symmetric()) throw Error(ErrorCode::ParseError, y.id + ".picard: Gram must be symmetric");
  y.picard = IntegerLattice(gram, y.basis_labels.size() == gram.rows() ? y.basis_labels
                                                                         : std::vector<std::string>{});
  if (!j.at("ample_cone").is_array()) throw Error(ErrorCode::ParseError, "ample_cone: expected an array");
  for (const auto& g : j.at("ample_cone")) y.ample_cone.push_back(report::int_vector_from_json(g, y.id + ".ample_cone"));
  y.antiK = report::int_vector_from_json(j.at("antiK"), y.id + ".antiK");
  y.c2_pairings = report::int_vector_from_json(j.at("c2_pairings"), y.id + ".c2_pairings");
  y.chi = report::int_from_json(j.at("chi"), y.id + ".chi");
  y.b3 = report::int_from_json(j.at("b3"), y.id + ".b3");
  if (!j.at("h3_torsion_free").is_boolean())
    throw Error(ErrorCode::ParseError, "h3_torsion_free: expected a boolean");
  y.h3_torsion_free = j.at("h3_torsion_free").get<bool>();
  return y;
}

inline Json family_to_json(const SemiFanoFamily& y) {
  Json j;
  j["id"] = y.id;
  j["name"] = y.name;
  j["picard"] = report::to_json(y.picard.gram());
  j["basis_labels"] = y.basis_labels;
  j["ample_cone"] = report::to_json(y.ample_cone);
  j["antiK"] = report::to_json(y.antiK);
  j["c2_pairings"] = report::to_json(y.c2_pairings);
  j["chi"] = report::to_json(y.chi);
  j["b3"] = report::to_json(y.b3);
  j["h3_torsion_free"] = y.h3_torsion_free;
  j["provenance"] = y.provenance;
  return j;
}

inline Json block_to_json(const BuildingBlock& z) {
  Json j;
  j["family_id"] = z.family_id;
  j["N"] = report::to_json(z.N.gram());
  j["basis_labels"] = z.basis_labels;
  j["c2Z"] = report::to_json(z.c2Z);
  j["chiZ"] = report::to_json(z.chiZ);
  j["b3Z"] = report::to_json(z.b3Z);
  j["genus"] = report::to_json(z.genus);
  j["K_rank"] = z.k_rank;
  j["c1_dot_c2"] = report::to_json(z.c1_dot_c2());
  return j;
}

/// Parses a catalog document (array of records). Whitespace-only text is an empty catalog.
inline std::vector<SemiFanoFamily> parse_catalog(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::ParseError, "catalog must be a JSON array");
  std::vector<SemiFanoFamily> out;
  for (const auto& rec : doc) out.push_back(family_from_json(rec));
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<SemiFanoFamily> load_catalog(const std::string& path) {
  return parse_catalog(read_text_file(path));
}

}  // namespace tcs::blocks
