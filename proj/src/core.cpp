#include "sfvs/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace sfvs {

Graph::Graph(int n) : n_(n) {
  internal_check(n >= 0, "graph size must be non-negative");
  adj_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  degree_.assign(n + 1, 0);
}

void Graph::add_edge(int u, int v) {
  internal_check(u >= 1 && u <= n_ && v >= 1 && v <= n_ && u != v,
                 "add_edge endpoints out of range");
  if (adjacent(u, v)) return;
  adj_[static_cast<std::size_t>(u) * (n_ + 1) + v] = 1;
  adj_[static_cast<std::size_t>(v) * (n_ + 1) + u] = 1;
  ++degree_[u];
  ++degree_[v];
  ++edge_count_;
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Interval: return "interval";
    case ModelKind::CircularArc: return "circular-arc";
    case ModelKind::Permutation: return "permutation";
    case ModelKind::Cobipartite: return "cobipartite";
    case ModelKind::Generic: return "generic";
  }
  throw InternalError("unknown model kind");
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "interval") return ModelKind::Interval;
  if (text == "circular-arc") return ModelKind::CircularArc;
  if (text == "permutation") return ModelKind::Permutation;
  if (text == "cobipartite") return ModelKind::Cobipartite;
  if (text == "generic") return ModelKind::Generic;
  throw ValidationError("unknown instance kind '" + text + "'");
}

std::vector<int> Instance::s_vertices() const {
  std::vector<int> out;
  for (int v = 1; v <= n; ++v)
    if (in_s[v]) out.push_back(v);
  return out;
}

Weight Instance::total_weight() const {
  Weight sum = 0;
  for (int v = 1; v <= n; ++v) sum += weights[v];
  return sum;
}

namespace {

// Ranks 2n distinct endpoint values to 1..2n, reporting duplicates by vertex.
// which[k] receives the rank of ends[k/2]'s left (k even) or right (k odd).
std::vector<int> rank_endpoints(
    const std::vector<std::pair<long long, long long>>& ends,
    const char* what) {
  const int n = static_cast<int>(ends.size());
  std::vector<std::pair<long long, int>> pts;  // (value, owner index 2v / 2v+1)
  pts.reserve(2 * static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    pts.emplace_back(ends[v - 1].first, 2 * v);
    pts.emplace_back(ends[v - 1].second, 2 * v + 1);
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (pts[k].first == pts[k - 1].first) {
      throw ValidationError(std::string(what) + " endpoint value " +
                            std::to_string(pts[k].first) +
                            " used by vertices " +
                            std::to_string(pts[k - 1].second / 2) + " and " +
                            std::to_string(pts[k].second / 2));
    }
  }
  std::vector<int> rank(2 * n + 2, 0);  // indexed by owner index
  for (std::size_t k = 0; k < pts.size(); ++k)
    rank[pts[k].second] = static_cast<int>(k) + 1;
  return rank;
}

}  // namespace

NormalizedIntervals validate_interval_model(const IntervalModel& m) {
  const int n = static_cast<int>(m.ends.size());
  for (int v = 1; v <= n; ++v) {
    if (m.ends[v - 1].first >= m.ends[v - 1].second) {
      throw ValidationError("interval of vertex " + std::to_string(v) +
                            " must have left < right");
    }
  }
  std::vector<int> rank = rank_endpoints(m.ends, "interval");

  // Relabel vertices by ascending right endpoint.
  std::vector<std::pair<int, int>> by_right;  // (right rank, vertex)
  by_right.reserve(n);
  for (int v = 1; v <= n; ++v) by_right.emplace_back(rank[2 * v + 1], v);
  std::sort(by_right.begin(), by_right.end());

  NormalizedIntervals out;
  out.n = n;
  out.left.assign(n + 1, 0);
  out.right.assign(n + 1, 0);
  out.label_to_vertex.assign(n + 1, 0);
  out.vertex_to_label.assign(n + 1, 0);
  out.left[0] = -1;
  out.right[0] = 0;
  for (int label = 1; label <= n; ++label) {
    const int v = by_right[label - 1].second;
    out.label_to_vertex[label] = v;
    out.vertex_to_label[v] = label;
    out.left[label] = rank[2 * v];
    out.right[label] = rank[2 * v + 1];
  }
  return out;
}

NormalizedArcs validate_circular_arc_model(const CircularArcModel& m) {
  const int n = static_cast<int>(m.ends.size());
  std::vector<int> rank = rank_endpoints(m.ends, "arc");
  NormalizedArcs out;
  out.n = n;
  out.from.assign(n + 1, 0);
  out.to.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    out.from[v] = rank[2 * v];
    out.to[v] = rank[2 * v + 1];
  }
  return out;
}

void validate_permutation_model(const PermutationModel& m) {
  const int n = static_cast<int>(m.pi.size());
  std::vector<char> seen(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    const int value = m.pi[i];
    if (value < 1 || value > n) {
      throw ValidationError("permutation value " + std::to_string(value) +
                            " at position " + std::to_string(i + 1) +
                            " is out of range 1.." + std::to_string(n));
    }
    if (seen[value]) {
      throw ValidationError("permutation value " + std::to_string(value) +
                            " appears more than once");
    }
    seen[value] = 1;
  }
}

void validate_edge_list_model(const EdgeListModel& m, int n) {
  for (const auto& [u, v] : m.edges) {
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ValidationError("edge endpoint out of range 1.." +
                            std::to_string(n) + ": " + std::to_string(u) + " " +
                            std::to_string(v));
    }
    if (u == v) {
      throw ValidationError("self-loop at vertex " + std::to_string(u) +
                            " is not allowed");
    }
  }
  if (m.part_a) {
    std::vector<char> seen(n + 1, 0);
    for (int v : *m.part_a) {
      if (v < 1 || v > n) {
        throw ValidationError("partA vertex " + std::to_string(v) +
                              " is out of range 1.." + std::to_string(n));
      }
      if (seen[v]) {
        throw ValidationError("partA vertex " + std::to_string(v) +
                              " listed twice");
      }
      seen[v] = 1;
    }
  }
}

void validate_instance(const Instance& inst) {
  if (inst.n < 0) throw ValidationError("n must be non-negative");
  if (static_cast<int>(inst.weights.size()) != inst.n + 1 ||
      static_cast<int>(inst.in_s.size()) != inst.n + 1) {
    throw ValidationError("weights/terminal arrays do not match n");
  }
  Weight max_weight = 0;
  for (int v = 1; v <= inst.n; ++v) {
    if (inst.weights[v] < 0) {
      throw ValidationError("weight of vertex " + std::to_string(v) +
                            " is negative");
    }
    max_weight = std::max(max_weight, inst.weights[v]);
  }
  if (inst.n > 0 &&
      max_weight > std::numeric_limits<Weight>::max() / inst.n) {
    throw ValidationError("weights too large: n * maxWeight overflows");
  }

  const auto expect = [&](bool ok) {
    if (!ok) {
      throw ValidationError(std::string("model does not match kind '") +
                            to_string(inst.kind) + "'");
    }
  };
  switch (inst.kind) {
    case ModelKind::Interval: {
      expect(std::holds_alternative<IntervalModel>(inst.model));
      const auto& m = std::get<IntervalModel>(inst.model);
      expect(static_cast<int>(m.ends.size()) == inst.n);
      validate_interval_model(m);
      break;
    }
    case ModelKind::CircularArc: {
      expect(std::holds_alternative<CircularArcModel>(inst.model));
      const auto& m = std::get<CircularArcModel>(inst.model);
      expect(static_cast<int>(m.ends.size()) == inst.n);
      validate_circular_arc_model(m);
      break;
    }
    case ModelKind::Permutation: {
      expect(std::holds_alternative<PermutationModel>(inst.model));
      const auto& m = std::get<PermutationModel>(inst.model);
      expect(static_cast<int>(m.pi.size()) == inst.n);
      validate_permutation_model(m);
      break;
    }
    case ModelKind::Cobipartite:
    case ModelKind::Generic: {
      expect(std::holds_alternative<EdgeListModel>(inst.model));
      validate_edge_list_model(std::get<EdgeListModel>(inst.model), inst.n);
      break;
    }
  }
}

namespace {

// True iff arc (from, to) of ranked points covers point p (all clockwise).
bool arc_contains(int from, int to, int p) {
  if (from <= to) return from <= p && p <= to;
  return p >= from || p <= to;
}

}  // namespace

Graph build_adjacency(const Instance& inst) {
  validate_instance(inst);
  Graph g(inst.n);
  switch (inst.kind) {
    case ModelKind::Interval: {
      const auto& ends = std::get<IntervalModel>(inst.model).ends;
      for (int u = 1; u <= inst.n; ++u) {
        for (int v = u + 1; v <= inst.n; ++v) {
          if (ends[u - 1].first < ends[v - 1].second &&
              ends[v - 1].first < ends[u - 1].second) {
            g.add_edge(u, v);
          }
        }
      }
      break;
    }
    case ModelKind::CircularArc: {
      const NormalizedArcs arcs =
          validate_circular_arc_model(std::get<CircularArcModel>(inst.model));
      // Two arcs intersect iff one contains the other's starting point.
      for (int u = 1; u <= inst.n; ++u) {
        for (int v = u + 1; v <= inst.n; ++v) {
          if (arc_contains(arcs.from[u], arcs.to[u], arcs.from[v]) ||
              arc_contains(arcs.from[v], arcs.to[v], arcs.from[u])) {
            g.add_edge(u, v);
          }
        }
      }
      break;
    }
    case ModelKind::Permutation: {
      const auto& pi = std::get<PermutationModel>(inst.model).pi;
      std::vector<int> pos(inst.n + 1, 0);  // bottom position of each vertex
      for (int i = 1; i <= inst.n; ++i) pos[pi[i - 1]] = i;
      for (int u = 1; u <= inst.n; ++u) {
        for (int v = u + 1; v <= inst.n; ++v) {
          if (pos[v] < pos[u]) g.add_edge(u, v);
        }
      }
      break;
    }
    case ModelKind::Cobipartite:
    case ModelKind::Generic: {
      for (const auto& [u, v] : std::get<EdgeListModel>(inst.model).edges) {
        g.add_edge(u, v);
      }
      break;
    }
  }
  return g;
}

namespace {

// Scratch buffers shared across cycle queries to keep the exhaustive solvers
// allocation-free in their inner loop.
struct CycleScratch {
  std::vector<int> comp;
  std::vector<int> queue;
  std::vector<char> seen;
};

bool lies_on_cycle_impl(const Graph& g, const std::vector<char>& retained,
                        int v, CycleScratch& scratch) {
  const int n = g.n();
  // Label the components of G[retained] - v.
  scratch.comp.assign(n + 1, -1);
  auto& comp = scratch.comp;
  auto& queue = scratch.queue;
  int components = 0;
  for (int seed = 1; seed <= n; ++seed) {
    if (!retained[seed] || seed == v || comp[seed] >= 0) continue;
    comp[seed] = components;
    queue.assign(1, seed);
    while (!queue.empty()) {
      const int u = queue.back();
      queue.pop_back();
      for (int w = 1; w <= n; ++w) {
        if (retained[w] && w != v && comp[w] < 0 && g.adjacent(u, w)) {
          comp[w] = components;
          queue.push_back(w);
        }
      }
    }
    ++components;
  }
  // v lies on a cycle iff two of its neighbors share a component.
  scratch.seen.assign(components, 0);
  for (int u = 1; u <= n; ++u) {
    if (!retained[u] || u == v || !g.adjacent(v, u)) continue;
    if (scratch.seen[comp[u]]) return true;
    scratch.seen[comp[u]] = 1;
  }
  return false;
}

}  // namespace

bool lies_on_cycle(const Graph& g, const std::vector<char>& retained, int v) {
  CycleScratch scratch;
  return lies_on_cycle_impl(g, retained, v, scratch);
}

bool is_s_forest(const Graph& g, const std::vector<char>& in_s,
                 const std::vector<char>& retained) {
  thread_local CycleScratch scratch;
  for (int v = 1; v <= g.n(); ++v) {
    if (retained[v] && in_s[v] &&
        lies_on_cycle_impl(g, retained, v, scratch)) {
      return false;
    }
  }
  return true;
}

std::vector<int> connected_components(const Graph& g, int& component_count) {
  const int n = g.n();
  std::vector<int> comp(n + 1, -1);
  std::vector<int> queue;
  component_count = 0;
  for (int seed = 1; seed <= n; ++seed) {
    if (comp[seed] >= 0) continue;
    comp[seed] = component_count;
    queue.assign(1, seed);
    while (!queue.empty()) {
      const int u = queue.back();
      queue.pop_back();
      for (int w = 1; w <= n; ++w) {
        if (comp[w] < 0 && g.adjacent(u, w)) {
          comp[w] = component_count;
          queue.push_back(w);
        }
      }
    }
    ++component_count;
  }
  return comp;
}

Solution make_solution(const Instance& inst, const std::vector<char>& retained,
                       std::string solver) {
  internal_check(static_cast<int>(retained.size()) == inst.n + 1,
                 "retained mask has wrong size");
  Solution sol;
  sol.solver = std::move(solver);
  for (int v = 1; v <= inst.n; ++v) {
    if (retained[v]) {
      sol.retained.push_back(v);
    } else {
      sol.removed.push_back(v);
      sol.removed_weight += inst.weights[v];
    }
  }
  return sol;
}

void verify_solution(const Instance& inst, const Graph& g,
                     const Solution& sol) {
  std::vector<char> retained(inst.n + 1, 0);
  std::vector<char> seen(inst.n + 1, 0);
  Weight removed_weight = 0;
  for (int v : sol.retained) {
    internal_check(v >= 1 && v <= inst.n && !seen[v],
                   "solution retains an invalid or repeated vertex");
    seen[v] = 1;
    retained[v] = 1;
  }
  for (int v : sol.removed) {
    internal_check(v >= 1 && v <= inst.n && !seen[v],
                   "solution removes an invalid or repeated vertex");
    seen[v] = 1;
    removed_weight += inst.weights[v];
  }
  internal_check(
      static_cast<int>(sol.retained.size() + sol.removed.size()) == inst.n,
      "solution does not partition the vertex set");
  internal_check(removed_weight == sol.removed_weight,
                 "solution misreports its removed weight");
  internal_check(is_s_forest(g, inst.in_s, retained),
                 "solution's retained set is not an S-forest");
}

}  // namespace sfvs
