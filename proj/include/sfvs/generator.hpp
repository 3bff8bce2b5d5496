#pragma once

// Seeded random instance generators for all four graph classes.  Instances are
// fully determined by (kind, n, seed, s_fraction, max_weight) and identical on
// every platform, which makes differential test logs reproducible.

#include <cstdint>

#include "sfvs/core.hpp"

namespace sfvs {

// xorshift64* stream.  Seed 0 is remapped to a fixed non-zero constant since
// the all-zero state is a fixed point of the transition.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // Uniform value in [0, k) via modulo; the tiny modulo bias is accepted in
  // exchange for a portable, arithmetic-only mapping.  Requires k >= 1.
  std::uint64_t next_below(std::uint64_t k);

  // True with probability p (clamped to [0, 1]), decided by comparing the top
  // 32 bits of one draw against round(p * 2^32).
  bool next_bernoulli(double p);

 private:
  std::uint64_t state_;
};

struct GenParams {
  ModelKind kind = ModelKind::Interval;
  int n = 0;
  std::uint64_t seed = 1;
  double s_fraction = 0.3;
  Weight max_weight = 100;
};

// Draw order, frozen for reproducibility: model first, then terminal-set
// membership for vertices 1..n, then weights for vertices 1..n.
//
//   interval      shuffle values 1..2n; vertex i's interval is the sorted pair
//                 of values 2i-1 and 2i of the shuffled sequence.
//   circular-arc  shuffle values 1..2n; vertex i's arc runs clockwise from
//                 value 2i-1 to value 2i (order kept, so spans vary).
//   permutation   Fisher-Yates shuffle of the identity.
//   cobipartite   one side draw per vertex (A or B); sides are cliques; each
//                 cross pair (u < v) gets an edge with probability 1/2, drawn
//                 in lexicographic pair order.
Instance generate_instance(const GenParams& params);

}  // namespace sfvs
