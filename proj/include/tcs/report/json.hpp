#pragma once

#include "tcs/core/error.hpp"
#include "tcs/core/matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tcs::report {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline Json to_json(const Int& x) {
  if (fits_int64(x)) return Json(x.convert_to<long long>());
  return Json(x.str());
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline Json to_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline Int int_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Int(s);
  }
  throw Error(ErrorCode::ParseError, what + ": expected an integer");
}

inline IntVector int_vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + ": expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x, what));
  return v;
}

/// Row-major matrix given as an array of rows.
inline IntMatrix int_matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, what + ": expected an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r, what));
  if (rows.empty()) return IntMatrix();
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw Error(ErrorCode::ParseError, what + ": ragged matrix");
  return IntMatrix::from_rows(rows);
}

}  // namespace tcs::report
