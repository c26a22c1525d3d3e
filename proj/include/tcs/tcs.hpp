#pragma once

#include "tcs/blocks/building_block.hpp"
#include "tcs/blocks/catalog.hpp"
#include "tcs/core/error.hpp"
#include "tcs/core/integer.hpp"
#include "tcs/core/matrix.hpp"
#include "tcs/enumeration/enumerate.hpp"
#include "tcs/invariants/invariants.hpp"
#include "tcs/k3/k3_lattice.hpp"
#include "tcs/lattice/lattice.hpp"
#include "tcs/lattice/normal_forms.hpp"
#include "tcs/matching/configuration.hpp"
#include "tcs/matching/genericity.hpp"
#include "tcs/reference_table.hpp"
#include "tcs/report/json.hpp"
#include "tcs/report/records.hpp"
#include "tcs/report/reproduce.hpp"
