#pragma once

// Exact polynomial solver for interval instances.
//
// Vertices are relabeled 1..n by ascending right endpoint, with a sentinel
// label 0 whose interval (-1, 0) lies strictly left of everything.  The sweep
// maintains three state families over the prefix V_i = {1..i}:
//
//   A(i)       max-weight X <= V_i with G[X] an S-forest.
//   B(i, x)    max-weight X <= V_i with G[X + {x}] an S-forest (x > i).
//   C(i, x, y) max-weight X <= V_i with G[X + {x, y}] an S-forest, where
//              {x,y} is an edge of non-terminals with l(x) < l(y), x,y > i.
//
// Because every chordless cycle of an interval graph is a triangle, each
// recurrence only ever consults states whose extra vertices are pairwise
// intersecting, and C(i, x, y) stops being referenced below the first label
// not intersecting y; the C table therefore stores, per edge context, just
// the contiguous run of layers that can be read.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

// Sweep predecessors per label i >= 1:
//   prev[i]  the label with the largest right endpoint strictly left of r(i);
//            always i - 1 (0 for i = 1).
//   far[i]   the label with the largest right endpoint strictly left of l(i),
//            i.e. the nearest label whose interval clears i entirely; 0 when
//            none exists.
struct IntervalPredecessors {
  std::vector<int> prev;  // size n+1; prev[0] = 0
  std::vector<int> far;   // size n+1; far[0] = 0
};

IntervalPredecessors interval_predecessors(const NormalizedIntervals& ivs);

// An interval instance translated into label space.
struct IntervalLabelSpace {
  NormalizedIntervals normalized;
  std::vector<char> in_s;        // by label; [0] = 0
  std::vector<Weight> weights;   // by label; [0] = 0
};

IntervalLabelSpace interval_label_space(const Instance& inst);

class IntervalDp {
 public:
  explicit IntervalDp(const IntervalLabelSpace& space);

  int n() const { return n_; }
  bool adjacent(int i, int j) const {  // label-space interval intersection
    return l_[j] < r_[i] && l_[i] < r_[j];
  }

  Weight a_value(int i) const;           // 0 <= i <= n
  Weight b_value(int i, int x) const;    // 0 <= i < x <= n
  // Stored C layers only: base(x,y) <= i <= min(x,y)-1 for an eligible edge
  // context; nullopt for anything else.
  std::optional<Weight> c_value(int i, int x, int y) const;

  // Retained label sets reconstructed from the stored choice tags.  The B and
  // C traces cover only the X part (the context vertices are implied).
  std::vector<int> trace_a(int i) const;
  std::vector<int> trace_b(int i, int x) const;
  std::vector<int> trace_c(int i, int x, int y) const;

  // All stored C states as (layer, x, y) triples, for property tests.
  std::vector<std::array<int, 3>> stored_c_states() const;

  const IntervalPredecessors& predecessors() const { return pred_; }

 private:
  enum Tag : std::uint8_t {
    kABase,      // A(0) = empty
    kASkip,      // A(i) = A(i-1)
    kATake,      // A(i) = B(i-1, i) + i
    kBFromA,     // B(i, x) = A(i)          ({i,x} not an edge)
    kBSkip,      // B(i, x) = B(i-1, x)
    kBJump,      // B(i, x) = B(far[y'], x') + i   (terminal case)
    kBViaC,      // B(i, x) = C(i-1, x', y') + i   (non-terminal case)
    kCCollapse,  // C(i, x, y) = B(i, x)     ({i,y} not an edge)
    kCDescend,   // C(i, x, y) = C(i-1, x, y)  (i terminal)
    kCSkip,      // C(i, x, y) = C(i-1, x, y)
    kCTake,      // C(i, x, y) = C(i-1, x'', y'') + i
  };

  struct Context {
    int x = 0, y = 0;   // l(x) < l(y); {x,y} edge of non-terminals
    int base = 0;       // lowest stored layer (first label not meeting y)
    int top = 0;        // highest stored layer, min(x,y) - 1
    std::size_t offset = 0;  // into c_vals_ / c_tags_
  };

  std::size_t bi(int i, int x) const {
    return static_cast<std::size_t>(i) * (n_ + 1) + x;
  }
  int context_at(int x, int y) const;  // id or -1
  void order_by_left(int& u, int& v) const;
  Weight c_run_value(int ctx, int layer) const;
  Tag c_run_tag(int ctx, int layer) const;
  // Tag-following reconstruction shared by the three trace entry points;
  // start_kind: 0 = A, 1 = B, 2 = C.
  std::vector<int> walk_from(int start_kind, int i, int x, int y) const;

  int n_ = 0;
  std::vector<int> l_, r_;
  std::vector<char> s_;
  std::vector<Weight> w_;
  IntervalPredecessors pred_;

  std::vector<Weight> a_w_;
  std::vector<Tag> a_tag_;
  std::vector<Weight> b_w_;
  std::vector<Tag> b_tag_;
  std::vector<Context> contexts_;
  std::vector<int> context_id_;  // flat (n+1)^2 lookup, -1 when absent
  std::vector<Weight> c_vals_;
  std::vector<Tag> c_tags_;
};

// Exact solver; requires kind Interval (ClassMismatchError otherwise).
Solution solve_interval(const Instance& inst);

}  // namespace sfvs
