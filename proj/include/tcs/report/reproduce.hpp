#pragma once

#include "tcs/blocks/building_block.hpp"
#include "tcs/invariants/invariants.hpp"
#include "tcs/matching/configuration.hpp"
#include "tcs/reference_table.hpp"
#include "tcs/report/json.hpp"

#include <string>
#include <vector>

namespace tcs::report {

struct CellDiff {
  std::string row;
  std::string cell;
  std::string expected;
  std::string actual;
};

struct RowResult {
  std::string name;
  bool pass = true;
  invariants::TcsInvariants invariants;
  std::vector<CellDiff> diffs;
};

struct TableReproduction {
  std::vector<RowResult> rows;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// Recomputes every reference row from the catalog and compares cell by cell.
inline TableReproduction reproduce_table(const std::vector<blocks::SemiFanoFamily>& catalog) {
  TableReproduction out;
  for (const auto& ref : reference::table()) {
    RowResult row;
    row.name = ref.name;
    auto check = [&](const std::string& cell, const std::string& expected, const std::string& actual) {
      if (expected != actual) {
        row.pass = false;
        row.diffs.push_back({ref.name, cell, expected, actual});
      }
    };
    try {
      const auto plus = blocks::derive_block(blocks::find_family(catalog, ref.plus));
      const auto minus = blocks::derive_block(blocks::find_family(catalog, ref.minus));
      const auto cfg = matching::assemble_configuration(plus, minus, ref.D);
      const auto ev = invariants::evaluate(cfg);
      row.invariants = ev.invariants;
      check("P", to_string(ref.P), to_string(cfg.P.gram()));
      check("A+", to_string(ref.A_plus), to_string(ev.derived.A_plus));
      check("A-", to_string(ref.A_minus), to_string(ev.derived.A_minus));
      check("Lambda+", to_string(ref.Lambda_plus), to_string(ev.derived.Lambda_plus.gram()));
      check("Lambda-", to_string(ref.Lambda_minus), to_string(ev.derived.Lambda_minus.gram()));
      check("b3", ref.b3.str(), ev.invariants.b3.str());
      check("m", ref.m.str(), ev.invariants.m.str());
      check("xi", ref.xi.str() + " mod " + ref.xi_modulus.str(),
            ev.invariants.xi.str() + " mod " + ev.invariants.xi_modulus.str());
    } catch (const Error& e) {
      row.pass = false;
      row.diffs.push_back({ref.name, "evaluation", "success", e.what()});
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline Json to_json(const TableReproduction& t) {
  Json j;
  j["pass"] = t.pass();
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json x;
    x["row"] = r.name;
    x["pass"] = r.pass;
    x["b3"] = to_json(r.invariants.b3);
    x["m"] = to_json(r.invariants.m);
    x["xi"] = r.invariants.xi.str() + " mod " + r.invariants.xi_modulus.str();
    Json diffs = Json::array();
    for (const auto& d : r.diffs) diffs.push_back({{"cell", d.cell}, {"expected", d.expected}, {"actual", d.actual}});
    x["diffs"] = diffs;
    rows.push_back(x);
  }
  j["rows"] = rows;
  return j;
}

}  // namespace tcs::report
