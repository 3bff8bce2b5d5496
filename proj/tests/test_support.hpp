#pragma once

// Shared helpers for the unit tests: compact instance builders, an
// independent cycle checker based on biconnected blocks, and a harness for
// driving the command-line binary as a subprocess.

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs_test {

using sfvs::Instance;
using sfvs::Weight;

inline std::vector<Weight> units(int n) { return std::vector<Weight>(n, 1); }

inline Instance make_base(sfvs::ModelKind kind, int n, std::vector<Weight> weights,
                          const std::vector<int>& s) {
  sfvs::internal_check(static_cast<int>(weights.size()) == n,
                       "test builder: weights size mismatch");
  Instance inst;
  inst.kind = kind;
  inst.n = n;
  inst.weights.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) inst.weights[v] = weights[v - 1];
  inst.in_s.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v : s) inst.in_s[v] = 1;
  return inst;
}

inline Instance interval_instance(std::vector<std::pair<long long, long long>> ends,
                                  std::vector<Weight> weights, const std::vector<int>& s) {
  Instance inst = make_base(sfvs::ModelKind::Interval, static_cast<int>(ends.size()),
                            std::move(weights), s);
  inst.model = sfvs::IntervalModel{std::move(ends)};
  return inst;
}

inline Instance arc_instance(std::vector<std::pair<long long, long long>> ends,
                             std::vector<Weight> weights, const std::vector<int>& s) {
  Instance inst = make_base(sfvs::ModelKind::CircularArc, static_cast<int>(ends.size()),
                            std::move(weights), s);
  inst.model = sfvs::CircularArcModel{std::move(ends)};
  return inst;
}

inline Instance permutation_instance(std::vector<int> pi, std::vector<Weight> weights,
                                     const std::vector<int>& s) {
  Instance inst = make_base(sfvs::ModelKind::Permutation, static_cast<int>(pi.size()),
                            std::move(weights), s);
  inst.model = sfvs::PermutationModel{std::move(pi)};
  return inst;
}

inline Instance edge_instance(sfvs::ModelKind kind, int n,
                              std::vector<std::pair<int, int>> edges,
                              std::vector<Weight> weights, const std::vector<int>& s) {
  Instance inst = make_base(kind, n, std::move(weights), s);
  inst.model = sfvs::EdgeListModel{std::move(edges), std::nullopt};
  return inst;
}

inline std::vector<char> retained_mask(int n, const std::vector<int>& retained) {
  std::vector<char> mask(static_cast<std::size_t>(n) + 1, 0);
  for (int v : retained) mask[v] = 1;
  return mask;
}

// Independent S-forest check: decompose G[retained] into biconnected blocks
// (iterative lowlink with an edge stack); a block with at least three
// vertices is 2-connected, so each of its vertices lies on a cycle, and the
// retained set is an S-forest exactly when no such block touches S.
inline bool s_forest_by_blocks(const sfvs::Graph& g, const std::vector<char>& in_s,
                               const std::vector<char>& retained) {
  int n = g.n();
  std::vector<int> disc(n + 1, 0), low(n + 1, 0), parent(n + 1, 0);
  std::vector<std::pair<int, int>> edge_stack;
  int timer = 0;
  for (int root = 1; root <= n; ++root) {
    if (!retained[root] || disc[root] != 0) continue;
    std::vector<std::pair<int, int>> frames;  // (vertex, next neighbor to try)
    frames.emplace_back(root, 1);
    disc[root] = low[root] = ++timer;
    while (!frames.empty()) {
      int v = frames.back().first;
      bool descended = false;
      for (int u = frames.back().second; u <= n; ++u) {
        if (u == v || !retained[u] || !g.adjacent(v, u)) continue;
        if (disc[u] == 0) {
          edge_stack.emplace_back(v, u);
          parent[u] = v;
          disc[u] = low[u] = ++timer;
          frames.back().second = u + 1;
          frames.emplace_back(u, 1);
          descended = true;
          break;
        }
        if (u != parent[v] && disc[u] < disc[v]) {
          edge_stack.emplace_back(v, u);
          low[v] = std::min(low[v], disc[u]);
        }
      }
      if (descended) continue;
      frames.pop_back();
      if (frames.empty()) continue;
      int p = frames.back().first;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        int block_size = 0;
        bool block_hits_s = false;
        while (!edge_stack.empty()) {
          auto [a, b] = edge_stack.back();
          edge_stack.pop_back();
          for (int w : {a, b}) {
            if (!seen[w]) {
              seen[w] = 1;
              ++block_size;
              if (in_s[w]) block_hits_s = true;
            }
          }
          if (a == p && b == v) break;
        }
        if (block_size >= 3 && block_hits_s) return false;
      }
    }
  }
  return true;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

// Runs the built command-line binary with the given argument string.
inline CliResult run_cli(const std::string& args) {
  std::string command = std::string(SFVS_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  sfvs::internal_check(pipe != nullptr, "popen failed for: " + command);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  int status = pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace sfvs_test
