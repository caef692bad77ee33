// Lusztig braid-group operators on integrable modules via the divided-power
// triple sum, plus word operators and conjugated generator actions.  The
// sign/exponent convention is pinned behaviorally: on the two-dimensional
// A1 module the operator sends v1 -> -q v2, v2 -> v1, which is the variant
// under which the coideal generators reproduce the rank-one bottom vectors.
#pragma once

#include "qsph/module.hpp"

namespace qsph {

// Braid operator for node i; dir = +1 the operator, dir = -1 its inverse.
ModVec braidApply(const WeightModule& m, int i, int dir, const ModVec& v);

// T_w along a reduced word (applied left factor last); dir = -1 inverts.
ModVec braidWordApply(const WeightModule& m, const std::vector<int>& word, int dir,
                      const ModVec& v);

// Action of the algebra element T_w(E_j): v -> T_w(E_j(T_w^{-1} v)).
ModVec conjugatedEApply(const WeightModule& m, const std::vector<int>& word, int j,
                        const ModVec& v);

// Materialized sparse columns of the conjugated action.
std::vector<ModVec> conjugatedEColumns(const WeightModule& m, const std::vector<int>& word, int j);

}  // namespace qsph
