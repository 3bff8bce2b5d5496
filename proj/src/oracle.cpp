#include "sfvs/oracle.hpp"

#include <string>

namespace sfvs {

namespace {

constexpr int kOracleMaxN = 20;

void check_oracle_size(const Instance& inst) {
  if (inst.n > kOracleMaxN) {
    throw ClassMismatchError("oracle solver handles n <= " +
                             std::to_string(kOracleMaxN) + ", got n = " +
                             std::to_string(inst.n));
  }
}

void mask_to_retained(std::uint32_t mask, int n, std::vector<char>& out) {
  out.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    if (mask >> (v - 1) & 1u) out[v] = 1;
  }
}

// Compares retained sets as ascending vertex lists: true iff set(a) < set(b)
// lexicographically.
bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
  while (a != 0 && b != 0) {
    const std::uint32_t la = a & (~a + 1u);
    const std::uint32_t lb = b & (~b + 1u);
    if (la != lb) return la < lb;  // smaller first element wins
    a ^= la;
    b ^= lb;
  }
  return a == 0 && b != 0;  // proper prefix wins
}

}  // namespace

Solution oracle_solve(const Instance& inst) {
  check_oracle_size(inst);
  const Graph g = build_adjacency(inst);
  const int n = inst.n;

  bool have_best = false;
  Weight best_weight = 0;  // retained weight
  std::uint32_t best_mask = 0;
  std::vector<char> retained;

  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
  for (int k = 0; k <= n; ++k) {
    // All k-element retained sets, via Gosper's hack.
    std::uint32_t mask = k == 0 ? 0u : (1u << k) - 1u;
    while (true) {
      mask_to_retained(mask, n, retained);
      if (is_s_forest(g, inst.in_s, retained)) {
        Weight w = 0;
        for (int v = 1; v <= n; ++v) {
          if (retained[v]) w += inst.weights[v];
        }
        if (!have_best || w > best_weight ||
            (w == best_weight && mask_lex_less(mask, best_mask))) {
          have_best = true;
          best_weight = w;
          best_mask = mask;
        }
      }
      if (k == 0 || mask == 0) break;
      const std::uint32_t c = mask & (~mask + 1u);
      const std::uint32_t r = mask + c;
      const std::uint32_t next = (((r ^ mask) >> 2) / c) | r;
      if (next > full) break;
      mask = next;
    }
  }

  internal_check(have_best, "oracle found no S-forest (empty set is one)");
  mask_to_retained(best_mask, n, retained);
  Solution sol = make_solution(inst, retained, "oracle");
  verify_solution(inst, g, sol);
  return sol;
}

std::vector<std::uint32_t> all_maximal_s_forests(const Instance& inst) {
  check_oracle_size(inst);
  const Graph g = build_adjacency(inst);
  const int n = inst.n;
  const std::uint32_t count = 1u << n;

  std::vector<char> forest(count, 0);
  std::vector<char> retained;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    mask_to_retained(mask, n, retained);
    forest[mask] = is_s_forest(g, inst.in_s, retained) ? 1 : 0;
  }

  std::vector<std::uint32_t> maximal;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (!forest[mask]) continue;
    bool is_maximal = true;
    for (int v = 1; v <= n && is_maximal; ++v) {
      const std::uint32_t bit = 1u << (v - 1);
      if (!(mask & bit) && forest[mask | bit]) is_maximal = false;
    }
    if (is_maximal) maximal.push_back(mask);
  }
  return maximal;
}

}  // namespace sfvs
