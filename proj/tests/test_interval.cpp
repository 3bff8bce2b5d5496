#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "doctest.h"
#include "sfvs/core.hpp"
#include "sfvs/generator.hpp"
#include "sfvs/interval.hpp"
#include "sfvs/oracle.hpp"
#include "test_support.hpp"

using namespace sfvs;
using namespace sfvs_test;

namespace {

// Exhaustive reference for the table semantics, all in label space: the best
// weight of X within labels 1..i such that X plus the fixed context induces a
// terminal-cycle-free forest. Context labels contribute no weight.
Weight best_extension(const IntervalDp& dp, const IntervalLabelSpace& space,
                      int i, std::vector<int> context) {
  const int n = dp.n();
  Graph g(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (dp.adjacent(u, v)) g.add_edge(u, v);
    }
  }
  Weight best = -1;
  for (std::uint32_t mask = 0; mask < (1u << i); ++mask) {
    std::vector<char> retained(static_cast<std::size_t>(n) + 1, 0);
    Weight w = 0;
    for (int v = 1; v <= i; ++v) {
      if (mask >> (v - 1) & 1u) {
        retained[v] = 1;
        w += space.weights[v];
      }
    }
    for (int c : context) retained[c] = 1;
    if (is_s_forest(g, space.in_s, retained) && w > best) best = w;
  }
  internal_check(best >= 0, "empty set is always an extension");
  return best;
}

Weight trace_weight(const IntervalLabelSpace& space, const std::vector<int>& labels) {
  Weight w = 0;
  for (int v : labels) w += space.weights[v];
  return w;
}

bool trace_is_forest(const IntervalDp& dp, const IntervalLabelSpace& space,
                     const std::vector<int>& picked, std::vector<int> context) {
  const int n = dp.n();
  Graph g(n);
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (dp.adjacent(u, v)) g.add_edge(u, v);
    }
  }
  std::vector<char> retained(static_cast<std::size_t>(n) + 1, 0);
  for (int v : picked) retained[v] = 1;
  for (int c : context) retained[c] = 1;
  return is_s_forest(g, space.in_s, retained);
}

}  // namespace

TEST_CASE("sweep predecessors on handcrafted models") {
  IntervalPredecessors p = interval_predecessors(
      validate_interval_model(IntervalModel{{{1, 2}, {3, 6}, {4, 7}, {5, 8}}}));
  CHECK(p.prev == std::vector<int>{0, 0, 1, 2, 3});
  CHECK(p.far == std::vector<int>{0, 0, 1, 1, 1});

  IntervalPredecessors lone =
      interval_predecessors(validate_interval_model(IntervalModel{{{3, 7}}}));
  CHECK(lone.prev == std::vector<int>{0, 0});
  CHECK(lone.far == std::vector<int>{0, 0});

  // Nested intervals: the inner one is adjacent, so it never clears the outer.
  IntervalPredecessors nested = interval_predecessors(
      validate_interval_model(IntervalModel{{{2, 3}, {1, 4}}}));
  CHECK(nested.prev == std::vector<int>{0, 0, 1});
  CHECK(nested.far == std::vector<int>{0, 0, 0});
}

TEST_CASE("far skips overlapping labels on random models") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = generate_instance({ModelKind::Interval, 10, seed, 0.3, 9});
    IntervalLabelSpace space = interval_label_space(inst);
    IntervalPredecessors p = interval_predecessors(space.normalized);
    for (int i = 1; i <= 10; ++i) {
      CHECK(p.prev[i] == i - 1);
      // far[i]: the largest label ending before interval i starts.
      int expect = 0;
      for (int h = 1; h < i; ++h) {
        if (space.normalized.right[h] < space.normalized.left[i]) expect = h;
      }
      CHECK(p.far[i] == expect);
    }
  }
}

TEST_CASE("table values on handcrafted models") {
  Instance k3 = interval_instance({{1, 4}, {2, 5}, {3, 6}}, {5, 1, 7}, {3});
  IntervalDp dp(interval_label_space(k3));
  CHECK(dp.a_value(0) == 0);
  CHECK(dp.a_value(3) == 12);

  Instance free_k3 = interval_instance({{1, 4}, {2, 5}, {3, 6}}, {5, 1, 7}, {});
  IntervalDp free_dp(interval_label_space(free_k3));
  CHECK(free_dp.a_value(3) == 13);

  Instance lone = interval_instance({{2, 9}}, {42}, {1});
  IntervalDp lone_dp(interval_label_space(lone));
  CHECK(lone_dp.a_value(1) == 42);
}

TEST_CASE("solver on handcrafted models") {
  Instance disjoint = interval_instance({{1, 2}, {3, 4}}, units(2), {1, 2});
  Solution none = solve_interval(disjoint);
  CHECK(none.removed.empty());
  CHECK(none.removed_weight == 0);

  Instance k3 = interval_instance({{1, 4}, {2, 5}, {3, 6}}, {5, 1, 7}, {3});
  Solution sol = solve_interval(k3);
  CHECK(sol.removed == std::vector<int>{2});
  CHECK(sol.removed_weight == 1);

  Instance empty = interval_instance({}, {}, {});
  CHECK(solve_interval(empty).removed.empty());
}

TEST_CASE("prefix values grow monotonically") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Instance inst = generate_instance({ModelKind::Interval, 11, seed, 0.4, 50});
    IntervalDp dp(interval_label_space(inst));
    for (int i = 1; i <= 11; ++i) CHECK(dp.a_value(i - 1) <= dp.a_value(i));
  }
}

TEST_CASE("stored states match their exhaustive definitions") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    for (double s_frac : {0.0, 0.4, 1.0}) {
      Instance inst = generate_instance({ModelKind::Interval, 8, seed, s_frac, 20});
      IntervalLabelSpace space = interval_label_space(inst);
      IntervalDp dp(space);
      const int n = dp.n();

      for (int i = 0; i <= n; ++i) {
        CHECK(dp.a_value(i) == best_extension(dp, space, i, {}));
        std::vector<int> picked = dp.trace_a(i);
        CHECK(trace_weight(space, picked) == dp.a_value(i));
        CHECK(trace_is_forest(dp, space, picked, {}));
        for (int x = i + 1; x <= n; ++x) {
          CHECK(dp.b_value(i, x) == best_extension(dp, space, i, {x}));
          std::vector<int> bp = dp.trace_b(i, x);
          CHECK(trace_weight(space, bp) == dp.b_value(i, x));
          CHECK(trace_is_forest(dp, space, bp, {x}));
        }
      }

      for (const std::array<int, 3>& state : dp.stored_c_states()) {
        const int i = state[0], x = state[1], y = state[2];
        // Stored pair contexts are non-terminal edges with l(x) < l(y).
        CHECK_FALSE(space.in_s[x]);
        CHECK_FALSE(space.in_s[y]);
        CHECK(dp.adjacent(x, y));
        CHECK(space.normalized.left[x] < space.normalized.left[y]);
        CHECK(i < std::min(x, y));
        std::optional<Weight> value = dp.c_value(i, x, y);
        REQUIRE(value.has_value());
        CHECK(*value == best_extension(dp, space, i, {x, y}));
        std::vector<int> cp = dp.trace_c(i, x, y);
        CHECK(trace_weight(space, cp) == *value);
        CHECK(trace_is_forest(dp, space, cp, {x, y}));
      }
    }
  }
}

TEST_CASE("pair-context rows are stored only below the first clearing label") {
  // In each stored run the lowest layer is the largest prefix label whose
  // interval ends before the later context interval begins; deeper layers
  // collapse to plain single-context states and need no storage.
  for (std::uint64_t seed = 40; seed <= 55; ++seed) {
    Instance inst = generate_instance({ModelKind::Interval, 9, seed, 0.3, 9});
    IntervalLabelSpace space = interval_label_space(inst);
    IntervalDp dp(space);
    for (const std::array<int, 3>& state : dp.stored_c_states()) {
      const int i = state[0], x = state[1], y = state[2];
      if (i == 0) continue;
      // Every stored layer either meets y or is the base layer right below.
      if (!dp.adjacent(i, y)) {
        CHECK_FALSE(dp.c_value(i - 1, x, y).has_value());
      }
    }
  }
}

TEST_CASE("interval solver agrees with the exhaustive oracle") {
  for (double s_frac : {0.0, 0.3, 1.0}) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      int n = 1 + static_cast<int>(seed % 12);
      Instance inst = generate_instance({ModelKind::Interval, n, seed, s_frac, 100});
      Solution fast = solve_interval(inst);
      Solution slow = oracle_solve(inst);
      CAPTURE(seed);
      CAPTURE(s_frac);
      CAPTURE(n);
      CHECK(fast.removed_weight == slow.removed_weight);
    }
  }
}
