#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

// Positional structure of a permutation model plus its crossing pairs.
//
// Vertex u sits at position u on the top line and at position bot_pos[u] on
// the bottom line (bot_pos[pi[k]] = k). A sentinel vertex 0 occupies
// position 0 on both lines, carries weight 0, is outside S and is never
// retained. Two vertices are adjacent exactly when their segments cross:
// one precedes the other on the top line but follows it on the bottom line.
//
// A pair is either a single vertex written (u,u) or an edge {u,v} oriented
// so that u precedes v on top and v precedes u on the bottom. Pair p = (i,j)
// spans the universe
//   V(p) = { u : bot_pos[u] <= bot_pos[i] and u <= j },
// and two partial orders drive the recurrences:
//   (g,h) left-of  (i,j)  iff  g <= i on top  and  h precedes-or-equals j below,
//   (g,h) right-of (i,j)  iff  g precedes-or-equals i below  and  h <= j on top;
// strict versions require both coordinates to differ. Pair ids are assigned
// in ascending (bottom position of first end, top position of second end)
// order, a linear extension of the right order; pair 0 is (0,0).
//
// Each pair stores four precomputed predecessor pair ids, each the unique
// right-maximum over the pairs whose universe drops part of V(i,j):
//   minus_second[p]: pairs right-below p whose second end differs
//                    (universe = V(p) minus j),
//   minus_first[p]:  pairs right-below p whose first end differs
//                    (universe = V(p) minus i),
//   minus_both[p]:   pairs strictly right-below p
//                    (universe = V(p) minus both i and j),
//   detached[p]:     strictly right-below with both ends nonadjacent to both
//                    i and j (universe = V(p) minus i, j and their neighbors).
// minus_both_avoiding(p, x) is the on-demand fifth kind: strictly right-below
// with both ends nonadjacent to x (universe = V(p) minus i, j and x's
// neighbors). Every defining set contains (0,0), and the scan asserts the
// chosen maximum dominates every member.
struct PermutationStructure {
  int n = 0;
  std::vector<int> pi;         // bottom position -> vertex; pi[0] = 0
  std::vector<int> bot_pos;    // vertex -> bottom position; bot_pos[0] = 0
  std::vector<char> in_s;      // by vertex; [0] = false
  std::vector<Weight> weights; // by vertex; [0] = 0
  Graph graph{0};

  std::vector<std::pair<int, int>> pairs;  // by id
  std::vector<int> self_pair;              // vertex -> id of (u,u)
  std::unordered_map<std::uint64_t, int> edge_pair;  // key i*(n+1)+j

  std::vector<int> minus_second;
  std::vector<int> minus_first;
  std::vector<int> minus_both;
  std::vector<int> detached;
  mutable std::unordered_map<std::uint64_t, int> avoiding_cache;

  bool adjacent(int u, int v) const { return graph.adjacent(u, v); }
  int pair_count() const { return static_cast<int>(pairs.size()); }
  // Id of the pair with the given ends (self pair when u == v); checks that
  // the ends actually cross in that orientation.
  int pair_of(int u, int v) const;
  bool left_le(int p, int q) const;
  bool left_lt(int p, int q) const;
  bool right_le(int p, int q) const;
  bool right_lt(int p, int q) const;
  bool universe_has(int p, int u) const;
  std::vector<int> universe(int p) const;  // ascending vertices, excludes 0
  int minus_both_avoiding(int p, int x) const;
  // The crossing pair among the given vertices that left-precedes every other
  // crossing pair of the set; checks existence and dominance.
  int leftmost_pair(const std::vector<int>& verts) const;
  // Id of the pair spanning everything: (pi[n], n), or 0 when n == 0.
  int final_pair() const;
};

// ClassMismatchError unless inst.kind == Permutation; validates the instance.
PermutationStructure permutation_structure(const Instance& inst);

// Lazily evaluated DP over pair states.
//
// Writing ends(c) for the one or two vertices of pair c, the states are
//   A(p):         heaviest X within V(p) with G[X] an S-forest,
//   B(p, c):      heaviest X within V(p) with G[X + ends(c)] an S-forest,
//                 where ends(c) lie outside V(p),
//   C(p, c1, c2): heaviest X within V(p) with G[X + ends(c1) + ends(c2)] an
//                 S-forest, c1 an edge pair strictly left-of c2.
// Values count the weight of X only, never of the context vertices. Each
// state is reduced to at most four alternatives (a predecessor state plus
// up to two vertices joining X); ties keep the first alternative listed, so
// evaluation and traceback are deterministic. State keys pack
// (kind, pair, ctx1, ctx2) into 64 bits; states are validated against their
// defining side conditions when first evaluated. The context rewrites that
// retarget a state onto the leftmost crossing pairs of its vertex set can
// produce second contexts that are not adjacent to the first context; such
// states still mean exactly what the formula above says, and the reduction
// rules cover them.
class PermutationDp {
 public:
  explicit PermutationDp(PermutationStructure structure);

  Weight best_weight();
  std::vector<int> best_retained();  // ascending vertex ids

  static std::uint64_t a_key(int pair);
  static std::uint64_t b_key(int pair, int ctx);
  static std::uint64_t c_key(int pair, int ctx1, int ctx2);

  // Evaluates the state on demand; usable for any state satisfying the
  // definitions, reachable from the root or not.
  Weight value(std::uint64_t key);
  std::vector<int> witness(std::uint64_t key);  // the X part, ascending

  const PermutationStructure& structure() const { return s_; }
  std::size_t evaluated_states() const { return memo_.size(); }
  std::vector<std::uint64_t> memoized_keys() const;  // ascending key order

 private:
  struct Entry {
    Weight weight = 0;
    std::uint16_t choice = 0;  // index into the candidate list; 0xFFFF = base
  };
  struct Candidate {
    std::uint64_t child = 0;
    int add1 = 0;  // vertices joining X (0 = none)
    int add2 = 0;
  };

  void validate_state(std::uint64_t key) const;
  void candidates_for(std::uint64_t key, std::vector<Candidate>& out) const;
  const Entry& ensure(std::uint64_t key);

  // Whether context vertex `dropped` can be removed from a state over `p`
  // whose other tracked vertices are `kept` without losing any cycle the
  // state is responsible for.
  bool collapse_safe(int p, int dropped, const std::vector<int>& kept) const;
  // Candidates retaining every vertex of `world` (pair ends plus contexts);
  // add1/add2 are the pair ends whose weights join the candidate value.
  void guarded_retain(int p, const std::vector<int>& world, int add1, int add2,
                      std::vector<Candidate>& out) const;
  // All well-formed states over pair `q` whose contexts are exactly `tracked`.
  void tracked_children(int q, const std::vector<int>& tracked,
                        std::vector<std::uint64_t>& out) const;

  PermutationStructure s_;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

Solution solve_permutation(const Instance& inst);

}  // namespace sfvs
