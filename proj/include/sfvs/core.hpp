#pragma once

// Core types for the weighted subset feedback vertex set (SFVS) solvers.
//
// An instance is an undirected graph given by a geometric model (intervals,
// circular arcs, a permutation) or an explicit edge list, together with
// non-negative vertex weights and a terminal set S.  A retained set Y is an
// "S-forest" when the induced subgraph G[Y] has no cycle passing through a
// vertex of S; the complement X = V \ Y of a maximum-weight S-forest is a
// minimum-weight subset feedback vertex set.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sfvs {

using Weight = std::int64_t;

// Input could not be parsed or fails model validation.  CLI exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested solver does not apply to this instance.  CLI exit code 2.
struct ClassMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; signals an implementation bug, never bad
// input.  CLI exit code 3.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Always-on invariant check for cheap conditions.
inline void internal_check(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

// Simple undirected graph on vertices 1..n with a dense symmetric adjacency
// matrix.  Index 0 is reserved as an isolated sentinel vertex so callers may
// probe adjacency against it and always read "not adjacent".
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  long long edge_count() const { return edge_count_; }

  bool adjacent(int u, int v) const {
    return adj_[static_cast<std::size_t>(u) * (n_ + 1) + v] != 0;
  }
  // u != v, both in 1..n; adding an existing edge is a no-op.
  void add_edge(int u, int v);
  int degree(int v) const { return degree_[v]; }

 private:
  int n_ = 0;
  long long edge_count_ = 0;
  std::vector<char> adj_;    // (n+1) x (n+1); row and column 0 stay false
  std::vector<int> degree_;  // size n+1
};

enum class ModelKind { Interval, CircularArc, Permutation, Cobipartite, Generic };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);  // throws ValidationError

// ends[v-1] = (left, right) endpoints of vertex v's interval.  All 2n endpoint
// values must be distinct and left < right.
struct IntervalModel {
  std::vector<std::pair<long long, long long>> ends;
  bool operator==(const IntervalModel&) const = default;
};

// ends[v-1] = (a, b): vertex v's arc runs clockwise from point a to point b,
// both inclusive.  The 2n endpoint values must be distinct; sorting them gives
// the clockwise order of points around the circle.
struct CircularArcModel {
  std::vector<std::pair<long long, long long>> ends;
  bool operator==(const CircularArcModel&) const = default;
};

// pi[i-1] is the value at position i of the bottom row; vertex v sits at top
// position v and bottom position pi^{-1}(v).  Vertices u < v are adjacent
// exactly when the permutation inverts them (v before u on the bottom row).
struct PermutationModel {
  std::vector<int> pi;
  bool operator==(const PermutationModel&) const = default;
};

// Explicit edge list; used for co-bipartite and generic instances.  part_a
// optionally records one side of a co-bipartition (informational only).
struct EdgeListModel {
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<int>> part_a;
  bool operator==(const EdgeListModel&) const = default;
};

struct Instance {
  ModelKind kind = ModelKind::Generic;
  int n = 0;
  std::vector<Weight> weights;  // size n+1; weights[0] unused and zero
  std::vector<char> in_s;       // size n+1; in_s[0] false
  std::variant<IntervalModel, CircularArcModel, PermutationModel, EdgeListModel>
      model;

  bool operator==(const Instance&) const = default;
  std::vector<int> s_vertices() const;
  Weight total_weight() const;
};

struct Solution {
  std::vector<int> removed;   // ascending vertex ids (the feedback set X)
  std::vector<int> retained;  // ascending vertex ids (the S-forest Y)
  Weight removed_weight = 0;
  std::string solver;  // which algorithm produced it, e.g. "interval"
};

// Interval model after validation: endpoint values replaced by their ranks
// 1..2n and vertices relabeled 1..n by ascending right endpoint.  Label 0 is a
// sentinel interval (-1, 0) lying strictly left of every real interval.
struct NormalizedIntervals {
  int n = 0;
  std::vector<int> left;   // size n+1; left[0] = -1
  std::vector<int> right;  // size n+1; right[0] = 0, ascending in the label
  std::vector<int> label_to_vertex;  // size n+1; [0] = 0
  std::vector<int> vertex_to_label;  // size n+1; [0] = 0
};

// Circular-arc model after validation: endpoint values replaced by their
// clockwise ranks 1..2n.  Vertex ids are unchanged.
struct NormalizedArcs {
  int n = 0;
  std::vector<int> from;  // size n+1; [0] = 0
  std::vector<int> to;    // size n+1; [0] = 0
};

NormalizedIntervals validate_interval_model(const IntervalModel& m);
NormalizedArcs validate_circular_arc_model(const CircularArcModel& m);
void validate_permutation_model(const PermutationModel& m);
void validate_edge_list_model(const EdgeListModel& m, int n);

// Whole-instance validation: model matches the declared kind and is valid,
// array sizes are coherent, weights are non-negative and safely summable.
void validate_instance(const Instance& inst);

// Builds the graph realized by the instance's model (validates it first).
Graph build_adjacency(const Instance& inst);

// True iff v has two distinct neighbors inside `retained` that are connected
// in G[retained] - v, i.e. v lies on a cycle of the induced subgraph.  (By
// chord-splitting, v then also lies on a chordless such cycle.)
bool lies_on_cycle(const Graph& g, const std::vector<char>& retained, int v);

// True iff G[retained] contains no cycle through a vertex of S.
bool is_s_forest(const Graph& g, const std::vector<char>& in_s,
                 const std::vector<char>& retained);

// Component id (0-based) per vertex, -1 at index 0; components are numbered
// in order of their smallest vertex.
std::vector<int> connected_components(const Graph& g, int& component_count);

// Assembles a Solution from a retained-set mask, computing the removed set and
// its weight.
Solution make_solution(const Instance& inst, const std::vector<char>& retained,
                       std::string solver);

// Re-checks a finished solution against the instance: partition of V, weight
// arithmetic, and the S-forest property.  Throws InternalError on failure.
void verify_solution(const Instance& inst, const Graph& g, const Solution& sol);

}  // namespace sfvs
