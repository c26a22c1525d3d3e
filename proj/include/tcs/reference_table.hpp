#pragma once

#include "tcs/core/matrix.hpp"

#include <string>
#include <vector>

namespace tcs::reference {

/// Published data for the four reference configurations (regression targets).
struct ReferenceRow {
  std::string name;
  std::string plus;
  std::string minus;
  IntMatrix D;
  IntMatrix P;
  IntMatrix A_plus;   // generators as columns, N+ coordinates
  IntMatrix A_minus;  // generators as columns, N- coordinates
  IntMatrix Lambda_plus;
  IntMatrix Lambda_minus;
  Int b3;
  Int m;
  Int xi;
  Int xi_modulus;
};

inline const std::vector<ReferenceRow>& table() {
  static const std::vector<ReferenceRow> rows = {
      {"row1", "Y5", "Y5", int_matrix({{0}}), int_matrix({{18, 0}, {0, 18}}), int_matrix({{1}}), int_matrix({{1}}),
       int_matrix({{18}}), int_matrix({{18}}), 71, 6, 0, 36},
      {"row2", "Y1", "Y3", int_matrix({{1, -1}, {-1, 1}}),
       int_matrix({{16, 12, 1, -1}, {12, 6, -1, 1}, {1, -1, 2, 5}, {-1, 1, 5, 4}}), int_matrix({{1}, {1}}),
       int_matrix({{1}, {1}}), int_matrix({{16, 12, 16}, {12, 6, -16}, {16, -16, -272}}),
       int_matrix({{2, 5, 23}, {5, 4, -23}, {23, -23, -552}}), 71, 6, 24, 36},
      {"row3", "Y3", "Y3", int_matrix({{1, -1}, {-1, 1}}),
       int_matrix({{2, 5, 1, -1}, {5, 4, -1, 1}, {1, -1, 2, 5}, {-1, 1, 5, 4}}), int_matrix({{1}, {1}}),
       int_matrix({{1}, {1}}), int_matrix({{2, 5, 16}, {5, 4, -16}, {16, -16, -272}}),
       int_matrix({{2, 5, 16}, {5, 4, -16}, {16, -16, -272}}), 85, 24, 12, 72},
      {"row4", "Y4", "Y2", int_matrix({{2, -2}, {-1, 1}}),
       int_matrix({{0, 3, 2, -2}, {3, 2, -1, 1}, {2, -1, 2, 8}, {-2, 1, 8, 4}}), int_matrix({{1}, {2}}),
       int_matrix({{1}, {1}}), int_matrix({{0, 3, 22}, {3, 2, -11}, {22, -11, -308}}),
       int_matrix({{2, 8, 20}, {8, 4, -20}, {20, -20, -180}}), 85, 24, 36, 72},
  };
  return rows;
}

}  // namespace tcs::reference
