#pragma once

#include <functional>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

// Partition of the vertices into two cliques, found by 2-coloring the
// complement graph. Complement components are processed in ascending order of
// their lowest vertex, which lands on side A; ValidationError if the
// complement has an odd cycle (the graph is not co-bipartite then).
struct Cobipartition {
  std::vector<int> side_a;  // ascending
  std::vector<int> side_b;  // ascending
};
Cobipartition cobipartition(const Graph& g, int n);

// Invokes `emit` once per candidate retained set (ascending vertex ids, with
// its generating family index). A maximal S-forest of a graph made of two
// cliques can keep, per side, at most two S-vertices and at most two
// non-S-vertices beyond forced choices, so the candidates enumerate all such
// shapes: a fixed family picks up to two S-vertices and up to two other
// vertices per side plus a closed-form rest (all remaining non-S vertices of
// a side, or those avoiding chosen neighborhoods). At most 22 n^4 candidates
// are emitted; duplicates are allowed.
void enumerate_cobipartite_candidates(
    const Instance& inst, const Cobipartition& parts,
    const std::function<void(int, const std::vector<int>&)>& emit);

// Validates every distinct candidate against the graph and keeps the heaviest
// retained set that induces an S-forest; ties go to the lexicographically
// smallest removed set. ValidationError when the graph is not co-bipartite.
Solution solve_cobipartite(const Instance& inst);

}  // namespace sfvs
