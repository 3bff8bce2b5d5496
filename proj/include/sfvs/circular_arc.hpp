#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

// Coverage of the 2n ranked endpoints and of the 2n gaps between consecutive
// endpoints. Gap g (1..2n) is the open stretch between ranked endpoint g and
// ranked endpoint g+1 (cyclically, so gap 2n sits between 2n and 1). An arc
// covers a point when the point lies on it (ends inclusive) and crosses a gap
// when it covers the whole open stretch; an arc never crosses the gap after
// its own clockwise end.
struct ArcCoverage {
  std::vector<std::vector<int>> point_cover;  // by ranked point, [0] unused
  std::vector<std::vector<int>> gap_cover;    // by gap, [0] unused
  std::vector<int> uncovered_gaps;            // ascending; empty iff covered
};
ArcCoverage arc_coverage(const NormalizedArcs& arcs);

// Opens the circle inside one gap. Arcs not crossing the gap keep their whole
// span; with one crossing arc it keeps its stretch up to the cut, and with two
// the one starting earliest after the cut keeps the stretch up to the cut
// while the other keeps the stretch after it. Whatever adjacency ran only
// across the cut is severed and reported. More than two crossing arcs cannot
// be opened this way (ValidationError).
struct CutResult {
  IntervalModel intervals;                        // same vertex ids as arcs
  std::vector<std::pair<int, int>> dropped_edges; // u < v, ascending
};
CutResult cut_to_interval_model(const NormalizedArcs& arcs, int cut_gap);

// One enumerated reduction of a component to an interval instance: which
// family produced it, where the circle was opened (0 = nowhere), what was
// discarded outright before cutting, which adjacencies the cut severed,
// which vertices were force-retained afterwards, and whether the resulting
// retained set survived validation against the component graph.
struct CutCandidateTrace {
  std::string family;
  int cut_gap = 0;
  std::vector<int> removed_before_cut;             // original vertex ids
  std::vector<std::pair<int, int>> dropped_edges;  // original vertex ids
  std::vector<int> forced_retained;                // original vertex ids
  std::vector<int> retained;                       // original vertex ids
  bool valid = false;
  Weight retained_weight = 0;
};

// Per connected component: if some gap of the component's own arc model is
// crossed by nothing, open the circle there and solve the interval instance
// directly. Otherwise enumerate candidate retained sets from several
// families — per gap with its crossing arcs removed, per point with its
// covering clique removed, the no-terminal-neighbor reduction with clip-cuts
// on the reduced model, clip-cuts on the unreduced model, the all-non-terminal
// set, and per-terminal crossing guesses that keep a terminal (alone or with
// one companion) across a gap it spans — validate every candidate against the
// component graph, and keep the heaviest valid one (ties: first enumerated).
// When `traces` is non-null it receives every candidate in enumeration order.
Solution solve_circular_arc(const Instance& inst,
                            std::vector<CutCandidateTrace>* traces = nullptr);

}  // namespace sfvs
