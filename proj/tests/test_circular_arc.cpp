// Tests for the circular-arc solver: endpoint coverage bookkeeping, the
// circle-opening construction with its dropped-edge report, the candidate
// pool with per-candidate validation, and differential agreement with the
// brute-force oracle.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "sfvs/circular_arc.hpp"
#include "sfvs/core.hpp"
#include "sfvs/generator.hpp"
#include "sfvs/interval.hpp"
#include "sfvs/oracle.hpp"
#include "test_support.hpp"

using namespace sfvs;
using namespace sfvs_test;

namespace {

// Four arcs wrapping the circle as a 4-cycle: 1-2-3-4-1.
Instance c4_arcs(std::vector<Weight> weights, const std::vector<int>& s) {
  return arc_instance({{1, 4}, {3, 6}, {5, 8}, {7, 2}}, std::move(weights), s);
}

NormalizedArcs normalize(const Instance& inst) {
  return validate_circular_arc_model(std::get<CircularArcModel>(inst.model));
}

bool interval_overlap(const std::pair<long long, long long>& a,
                      const std::pair<long long, long long>& b) {
  return a.first < b.second && b.first < a.second;
}

std::map<std::string, int> family_counts(
    const std::vector<CutCandidateTrace>& traces) {
  std::map<std::string, int> counts;
  for (const auto& t : traces) ++counts[t.family];
  return counts;
}

}  // namespace

TEST_CASE("arc coverage tabulates points, gaps and uncovered stretches") {
  const Instance inst = c4_arcs(units(4), {});
  const ArcCoverage cov = arc_coverage(normalize(inst));

  const std::vector<std::vector<int>> expected_points = {
      {}, {1, 4}, {1, 4}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 4}, {3, 4}};
  const std::vector<std::vector<int>> expected_gaps = {
      {}, {1, 4}, {1}, {1, 2}, {2}, {2, 3}, {3}, {3, 4}, {4}};
  REQUIRE(cov.point_cover.size() == 9);
  REQUIRE(cov.gap_cover.size() == 9);
  for (int p = 1; p <= 8; ++p) {
    CHECK(cov.point_cover[p] == expected_points[p]);
    CHECK(cov.gap_cover[p] == expected_gaps[p]);
  }
  CHECK(cov.uncovered_gaps.empty());
}

TEST_CASE("arc coverage reports gaps nothing crosses") {
  SUBCASE("two overlapping arcs leave the far side open") {
    const Instance inst = arc_instance({{1, 3}, {2, 4}}, units(2), {});
    const ArcCoverage cov = arc_coverage(normalize(inst));
    CHECK(cov.gap_cover[1] == std::vector<int>{1});
    CHECK(cov.gap_cover[2] == std::vector<int>{1, 2});
    CHECK(cov.gap_cover[3] == std::vector<int>{2});
    CHECK(cov.uncovered_gaps == std::vector<int>{4});
  }
  SUBCASE("a single arc never wraps past its own end") {
    const Instance inst = arc_instance({{1, 2}}, units(1), {});
    const ArcCoverage cov = arc_coverage(normalize(inst));
    CHECK(cov.gap_cover[1] == std::vector<int>{1});
    CHECK(cov.uncovered_gaps == std::vector<int>{2});
  }
}

TEST_CASE("opening the circle truncates the crossing arcs and reports what broke") {
  const Instance inst = c4_arcs(units(4), {});
  const NormalizedArcs arcs = normalize(inst);

  SUBCASE("two crossers lose exactly their mutual wrap edge") {
    const CutResult cut = cut_to_interval_model(arcs, 1);
    REQUIRE(cut.intervals.ends.size() == 4);
    CHECK(cut.dropped_edges ==
          std::vector<std::pair<int, int>>{{1, 4}});
    // The surviving intersection graph is the path 1-2-3-4.
    CHECK(interval_overlap(cut.intervals.ends[0], cut.intervals.ends[1]));
    CHECK(interval_overlap(cut.intervals.ends[1], cut.intervals.ends[2]));
    CHECK(interval_overlap(cut.intervals.ends[2], cut.intervals.ends[3]));
    CHECK_FALSE(interval_overlap(cut.intervals.ends[0], cut.intervals.ends[3]));
    CHECK_FALSE(interval_overlap(cut.intervals.ends[0], cut.intervals.ends[2]));
    CHECK_FALSE(interval_overlap(cut.intervals.ends[1], cut.intervals.ends[3]));
  }

  SUBCASE("a lone crosser keeps its stretch up to the cut") {
    const CutResult cut = cut_to_interval_model(arcs, 2);
    CHECK(cut.dropped_edges ==
          std::vector<std::pair<int, int>>{{1, 2}});
    CHECK(interval_overlap(cut.intervals.ends[0], cut.intervals.ends[3]));
  }

  SUBCASE("an uncrossed gap opens without losing anything") {
    const Instance two = arc_instance({{1, 3}, {2, 4}}, units(2), {});
    const CutResult cut = cut_to_interval_model(normalize(two), 4);
    CHECK(cut.dropped_edges.empty());
    CHECK(interval_overlap(cut.intervals.ends[0], cut.intervals.ends[1]));
  }

  SUBCASE("gap and arc indices are range checked") {
    CHECK_THROWS_AS(cut_to_interval_model(arcs, 0), ValidationError);
    CHECK_THROWS_AS(cut_to_interval_model(arcs, 9), ValidationError);
  }
}

TEST_CASE("opening the circle refuses gaps crossed by three arcs") {
  const Instance inst = arc_instance({{5, 2}, {6, 3}, {7, 4}}, units(3), {});
  const NormalizedArcs arcs = normalize(inst);
  // All three arcs wrap across the gap between the last and first point.
  CHECK_THROWS_AS(cut_to_interval_model(arcs, 6), ValidationError);
  // A gap crossed by only two of them opens, severing contacts that lived
  // solely on the discarded stubs.
  const CutResult cut = cut_to_interval_model(arcs, 5);
  CHECK(cut.dropped_edges ==
        std::vector<std::pair<int, int>>{{1, 2}, {1, 3}});
}

TEST_CASE("the circular-arc solver requires a circular-arc instance") {
  const Instance wrong =
      interval_instance({{1, 4}, {2, 6}, {3, 5}}, units(3), {1});
  CHECK_THROWS_AS(solve_circular_arc(wrong), ClassMismatchError);
  const Instance perm = permutation_instance({2, 1, 3}, units(3), {1});
  CHECK_THROWS_AS(solve_circular_arc(perm), ClassMismatchError);
}

TEST_CASE("wrapped 4-cycle instances solve exactly") {
  SUBCASE("one terminal forces one removal") {
    const Solution sol = solve_circular_arc(c4_arcs(units(4), {1}));
    CHECK(sol.removed_weight == 1);
    CHECK(sol.removed.size() == 1);
    CHECK(sol.solver == "circular-arc");
  }
  SUBCASE("all terminals still cost only the cheapest vertex") {
    const Solution sol =
        solve_circular_arc(c4_arcs({5, 1, 4, 3}, {1, 2, 3, 4}));
    CHECK(sol.removed_weight == 1);
    CHECK(sol.removed == std::vector<int>{2});
  }
  SUBCASE("no terminals means nothing to remove") {
    const Solution sol = solve_circular_arc(c4_arcs(units(4), {}));
    CHECK(sol.removed_weight == 0);
    CHECK(sol.retained == std::vector<int>{1, 2, 3, 4});
  }
}

TEST_CASE("two adjacent terminals wrapping the whole circle are retainable") {
  // Complete graph on five arcs whose optimum keeps exactly the two
  // terminals: their arcs overlap at both ends, covering every gap, so no
  // single opening gap exists that they both survive unscathed.  The
  // terminal guess families recover the pair.
  const Instance inst =
      arc_instance({{1, 9}, {6, 5}, {2, 7}, {3, 10}, {8, 4}},
                   {7, 8, 0, 3, 2}, {1, 2});
  const Graph g = build_adjacency(inst);
  CHECK(g.edge_count() == 10);  // K5
  const Solution sol = solve_circular_arc(inst);
  CHECK(sol.removed_weight == 5);
  CHECK(sol.retained == std::vector<int>{1, 2});
  CHECK(oracle_solve(inst).removed_weight == 5);
}

TEST_CASE("disjoint arc groups are solved independently and unioned") {
  const Instance inst = arc_instance(
      {{1, 5}, {2, 6}, {3, 7}, {10, 14}, {11, 15}, {12, 16}},
      {4, 1, 4, 3, 1, 3}, {1, 2, 3, 4, 5, 6});
  // Two vertex-disjoint triangles; each must lose its cheapest member.
  const Solution sol = solve_circular_arc(inst);
  CHECK(sol.removed_weight == 2);
  CHECK(sol.removed == std::vector<int>{2, 5});
}

TEST_CASE("arc instances that never wrap match the interval solver") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenParams params;
    params.kind = ModelKind::Interval;
    params.n = 5 + static_cast<int>(seed % 28);
    params.seed = seed;
    params.s_fraction = seed % 3 == 0 ? 1.0 : 0.4;
    params.max_weight = 9;
    const Instance as_intervals = generate_instance(params);

    Instance as_arcs = as_intervals;
    as_arcs.kind = ModelKind::CircularArc;
    as_arcs.model = CircularArcModel{
        std::get<IntervalModel>(as_intervals.model).ends};

    const Solution left = solve_interval(as_intervals);
    const Solution right = solve_circular_arc(as_arcs);
    CAPTURE(seed);
    CHECK(left.removed_weight == right.removed_weight);
    CHECK(right.solver == "circular-arc");
  }
}

TEST_CASE("candidate traces expose the validated pool") {
  SUBCASE("an uncovered instance reduces to one clean interval solve") {
    const Instance inst = arc_instance({{1, 3}, {2, 4}}, units(2), {1});
    std::vector<CutCandidateTrace> traces;
    const Solution sol = solve_circular_arc(inst, &traces);
    REQUIRE(traces.size() == 1);
    CHECK(traces[0].family == "interval");
    CHECK(traces[0].dropped_edges.empty());
    CHECK(traces[0].valid);
    CHECK(sol.removed_weight == 0);
  }

  SUBCASE("a covered all-terminal instance enumerates every family") {
    const Instance inst = c4_arcs(units(4), {1, 2, 3, 4});
    std::vector<CutCandidateTrace> traces;
    const Solution sol = solve_circular_arc(inst, &traces);
    CHECK(sol.removed_weight == 1);
    CHECK(traces.size() == 53);
    const std::map<std::string, int> counts = family_counts(traces);
    const std::map<std::string, int> expected = {
        {"gap-clique", 8},     {"point-clique", 8},      {"ns-cut", 8},
        {"ns-cut-forced", 4},  {"cut", 8},               {"cut-forced", 4},
        {"terminal-free", 1},  {"terminal-gap", 4},      {"terminal-gap-pair", 8}};
    CHECK(counts == expected);
  }

  SUBCASE("a covered one-terminal instance sheds the far vertex") {
    const Instance inst = c4_arcs(units(4), {1});
    std::vector<CutCandidateTrace> traces;
    solve_circular_arc(inst, &traces);
    CHECK(traces.size() == 33);
    const std::map<std::string, int> counts = family_counts(traces);
    CHECK(counts.at("ns-interval") == 1);
    CHECK(counts.at("terminal-gap") == 1);
    CHECK(counts.at("terminal-gap-pair") == 2);
  }

  SUBCASE("trace bookkeeping is consistent on random covered instances") {
    const Graph empty_graph(0);
    int covered_seen = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      GenParams params;
      params.kind = ModelKind::CircularArc;
      params.n = 8;
      params.seed = 900 + seed;
      params.s_fraction = 0.5;
      params.max_weight = 9;
      const Instance inst = generate_instance(params);
      const Graph g = build_adjacency(inst);

      std::vector<CutCandidateTrace> traces;
      const Solution sol = solve_circular_arc(inst, &traces);
      if (traces.size() > 1) ++covered_seen;

      Weight best_valid = -1;
      for (const auto& t : traces) {
        // The recorded validity flag agrees with an independent checker.
        const bool really_valid = s_forest_by_blocks(
            g, inst.in_s, retained_mask(inst.n, t.retained));
        CAPTURE(seed);
        CAPTURE(t.family);
        CHECK(t.valid == really_valid);
        Weight w = 0;
        for (int v : t.retained) w += inst.weights[v];
        CHECK(t.retained_weight == w);
        // Solo terminal guesses never sever an edge.
        if (t.family == "terminal-gap") CHECK(t.dropped_edges.empty());
        for (const auto& [u, v] : t.dropped_edges) {
          CHECK(u < v);
          CHECK(g.adjacent(u, v));
        }
        if (t.valid) best_valid = std::max(best_valid, t.retained_weight);
      }
      Weight total = 0;
      for (int v = 1; v <= inst.n; ++v) total += inst.weights[v];
      CHECK(sol.removed_weight == total - best_valid);
    }
    CHECK(covered_seen > 0);
  }
}

TEST_CASE("circular-arc solutions match the oracle on small instances") {
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    GenParams params;
    params.kind = ModelKind::CircularArc;
    params.n = 10;
    params.seed = seed;
    params.s_fraction = seed % 4 == 0   ? 0.0
                        : seed % 4 == 1 ? 0.3
                        : seed % 4 == 2 ? 0.5
                                        : 1.0;
    params.max_weight = 9;
    const Instance inst = generate_instance(params);
    if (arc_coverage(normalize(inst)).uncovered_gaps.empty()) ++covered;

    const Solution fast = solve_circular_arc(inst);
    const Solution slow = oracle_solve(inst);
    CAPTURE(seed);
    REQUIRE(fast.removed_weight == slow.removed_weight);

    const Graph g = build_adjacency(inst);
    CHECK(s_forest_by_blocks(g, inst.in_s,
                             retained_mask(inst.n, fast.retained)));
  }
  // The pool of seeds genuinely exercises the wrapped case.
  CHECK(covered > 100);
}

TEST_CASE("circular-arc solving is deterministic") {
  GenParams params;
  params.kind = ModelKind::CircularArc;
  params.n = 12;
  params.seed = 77;
  params.s_fraction = 0.5;
  params.max_weight = 20;
  const Instance inst = generate_instance(params);
  const Solution first = solve_circular_arc(inst);
  const Solution second = solve_circular_arc(inst);
  CHECK(first.removed == second.removed);
  CHECK(first.retained == second.retained);
  CHECK(first.removed_weight == second.removed_weight);
}
