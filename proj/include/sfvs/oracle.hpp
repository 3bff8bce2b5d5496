#pragma once

// Exhaustive reference solver.  Independent of the polynomial solvers; used to
// cross-check them on small instances.

#include <cstdint>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

// Scans all 2^n retained sets (in increasing popcount order) with is_s_forest
// and returns the maximum-weight S-forest, i.e. the minimum-weight subset
// feedback vertex set.  Ties are broken toward the lexicographically smallest
// retained set, so the result does not depend on scan order.  Requires
// n <= 20 (ClassMismatchError otherwise).
Solution oracle_solve(const Instance& inst);

// Every inclusion-maximal S-forest, as retained-set bitmasks over vertices
// 1..n (bit v-1 represents vertex v), in increasing mask order.  Requires
// n <= 20.
std::vector<std::uint32_t> all_maximal_s_forests(const Instance& inst);

}  // namespace sfvs
