#include "sfvs/permutation.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace sfvs {

namespace {

constexpr int kKindA = 0;
constexpr int kKindB = 1;
constexpr int kKindC = 2;

constexpr std::uint64_t kFieldMask = (1ull << 20) - 1;

int key_kind(std::uint64_t key) { return static_cast<int>(key >> 62); }
int key_pair(std::uint64_t key) {
  return static_cast<int>((key >> 40) & kFieldMask);
}
int key_ctx1(std::uint64_t key) {
  return static_cast<int>((key >> 20) & kFieldMask);
}
int key_ctx2(std::uint64_t key) { return static_cast<int>(key & kFieldMask); }

std::uint64_t edge_pair_key(int n, int u, int v) {
  return static_cast<std::uint64_t>(u) * (n + 1) + v;
}

constexpr std::uint16_t kBaseChoice = 0xFFFF;

// True when the listed vertices, taken with their mutual adjacencies, do not
// already close a cycle through a terminal.  The sets involved stay tiny (at
// most nine vertices), so the check runs on a local adjacency bitmask rather
// than a full-graph scan: a terminal lies on a cycle exactly when two of its
// neighbours are connected without it.
bool verts_coexist(const PermutationStructure& s, const std::vector<int>& verts) {
  const int k = static_cast<int>(verts.size());
  internal_check(k <= 12, "coexistence check beyond the designed set size");
  unsigned adj[12] = {};
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      internal_check(verts[a] != verts[b],
                     "coexistence check needs distinct vertices");
      if (s.adjacent(verts[a], verts[b])) {
        adj[a] |= 1u << b;
        adj[b] |= 1u << a;
      }
    }
  }
  const unsigned all = (1u << k) - 1;
  for (int t = 0; t < k; ++t) {
    if (!s.in_s[verts[t]]) continue;
    const unsigned nbrs = adj[t];
    if (__builtin_popcount(nbrs) < 2) continue;
    const unsigned rest = all & ~(1u << t);
    unsigned unseen = rest;
    while (unseen != 0) {
      unsigned comp = unseen & (~unseen + 1u);
      for (unsigned frontier = comp; frontier != 0;) {
        unsigned next = 0;
        for (unsigned scan = frontier; scan != 0; scan &= scan - 1) {
          next |= adj[__builtin_ctz(scan)];
        }
        next &= rest & ~comp;
        comp |= next;
        frontier = next;
      }
      unseen &= ~comp;
      if (__builtin_popcount(comp & nbrs) >= 2) return false;
    }
  }
  return true;
}

}  // namespace

int PermutationStructure::pair_of(int u, int v) const {
  if (u == v) {
    internal_check(u >= 0 && u <= n, "pair_of: vertex out of range");
    return u == 0 ? 0 : self_pair[u];
  }
  internal_check(u >= 1 && v >= 1 && u <= n && v <= n,
                 "pair_of: vertex out of range");
  internal_check(u < v && bot_pos[v] < bot_pos[u],
                 "pair_of: ends must cross with the first end top-first");
  auto it = edge_pair.find(edge_pair_key(n, u, v));
  internal_check(it != edge_pair.end(), "pair_of: pair not enumerated");
  return it->second;
}

bool PermutationStructure::left_le(int p, int q) const {
  const auto& [g, h] = pairs[p];
  const auto& [i, j] = pairs[q];
  return g <= i && bot_pos[h] <= bot_pos[j];
}

bool PermutationStructure::left_lt(int p, int q) const {
  const auto& [g, h] = pairs[p];
  const auto& [i, j] = pairs[q];
  return g < i && bot_pos[h] < bot_pos[j];
}

bool PermutationStructure::right_le(int p, int q) const {
  const auto& [g, h] = pairs[p];
  const auto& [i, j] = pairs[q];
  return bot_pos[g] <= bot_pos[i] && h <= j;
}

bool PermutationStructure::right_lt(int p, int q) const {
  const auto& [g, h] = pairs[p];
  const auto& [i, j] = pairs[q];
  return bot_pos[g] < bot_pos[i] && h < j;
}

bool PermutationStructure::universe_has(int p, int u) const {
  const auto& [i, j] = pairs[p];
  return bot_pos[u] <= bot_pos[i] && u <= j;
}

std::vector<int> PermutationStructure::universe(int p) const {
  std::vector<int> out;
  for (int u = 1; u <= n; ++u) {
    if (universe_has(p, u)) out.push_back(u);
  }
  return out;
}

int PermutationStructure::minus_both_avoiding(int p, int x) const {
  const std::uint64_t cache_key =
      static_cast<std::uint64_t>(p) * (n + 1) + x;
  auto cached = avoiding_cache.find(cache_key);
  if (cached != avoiding_cache.end()) return cached->second;

  const int count = pair_count();
  int best = -1;
  for (int q = 0; q < count; ++q) {
    const auto& [g, h] = pairs[q];
    if (right_lt(q, p) && !adjacent(g, x) && !adjacent(h, x)) best = q;
  }
  internal_check(best >= 0, "avoiding predecessor: empty candidate set");
  for (int q = 0; q < count; ++q) {
    const auto& [g, h] = pairs[q];
    if (right_lt(q, p) && !adjacent(g, x) && !adjacent(h, x)) {
      internal_check(right_le(q, best),
                     "avoiding predecessor must dominate every candidate");
    }
  }
  avoiding_cache.emplace(cache_key, best);
  return best;
}

int PermutationStructure::leftmost_pair(const std::vector<int>& verts) const {
  int best = -1;
  auto consider = [&](int q) {
    if (best == -1) {
      best = q;
      return;
    }
    const auto& [a, b] = pairs[q];
    const auto& [c, d] = pairs[best];
    if (a < c || (a == c && bot_pos[b] < bot_pos[d])) best = q;
  };
  for (int u : verts) {
    for (int v : verts) {
      if (u < v && bot_pos[v] < bot_pos[u]) consider(pair_of(u, v));
    }
  }
  internal_check(best != -1, "no crossing pair among the given vertices");
  for (int u : verts) {
    for (int v : verts) {
      if (u < v && bot_pos[v] < bot_pos[u]) {
        internal_check(left_le(best, pair_of(u, v)),
                       "leftmost pair must left-precede every crossing pair");
      }
    }
  }
  return best;
}

int PermutationStructure::final_pair() const {
  if (n == 0) return 0;
  return pair_of(pi[n], n);
}

PermutationStructure permutation_structure(const Instance& inst) {
  if (inst.kind != ModelKind::Permutation) {
    throw ClassMismatchError(
        std::string("permutation structure requires a permutation model, got ") +
        to_string(inst.kind));
  }
  validate_instance(inst);
  const auto& model = std::get<PermutationModel>(inst.model);

  PermutationStructure s;
  const int n = inst.n;
  s.n = n;
  s.pi.assign(n + 1, 0);
  s.bot_pos.assign(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    s.pi[k] = model.pi[k - 1];
    s.bot_pos[s.pi[k]] = k;
  }
  s.in_s = inst.in_s;
  s.weights = inst.weights;
  s.graph = build_adjacency(inst);

  s.pairs.push_back({0, 0});
  for (int u = 1; u <= n; ++u) s.pairs.push_back({u, u});
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      if (s.bot_pos[v] < s.bot_pos[u]) {
        internal_check(s.graph.adjacent(u, v),
                       "crossing segments must be adjacent");
        s.pairs.push_back({u, v});
      } else {
        internal_check(!s.graph.adjacent(u, v),
                       "nested segments must be non-adjacent");
      }
    }
  }
  std::sort(s.pairs.begin(), s.pairs.end(),
            [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
              if (s.bot_pos[a.first] != s.bot_pos[b.first]) {
                return s.bot_pos[a.first] < s.bot_pos[b.first];
              }
              return a.second < b.second;
            });
  const int count = s.pair_count();
  internal_check(count < (1 << 20), "pair id space exhausted");
  internal_check(s.pairs[0] == std::make_pair(0, 0),
                 "pair 0 must be the sentinel pair");
  for (int q = 1; q < count; ++q) {
    const bool distinct =
        s.bot_pos[s.pairs[q - 1].first] < s.bot_pos[s.pairs[q].first] ||
        (s.pairs[q - 1].first == s.pairs[q].first &&
         s.pairs[q - 1].second < s.pairs[q].second);
    internal_check(distinct, "pair sort keys must be strictly increasing");
  }

  s.self_pair.assign(n + 1, 0);
  for (int q = 0; q < count; ++q) {
    const auto& [a, b] = s.pairs[q];
    if (a == b) {
      s.self_pair[a] = q;
    } else {
      s.edge_pair.emplace(edge_pair_key(n, a, b), q);
    }
  }

  // The four eager predecessor kinds. Ids are assigned in an order extending
  // the right order, so the right-maximum of each candidate set is its member
  // with the largest id; a second pass verifies the maximum dominates.
  s.minus_second.assign(count, 0);
  s.minus_first.assign(count, 0);
  s.minus_both.assign(count, 0);
  s.detached.assign(count, 0);
  for (int p = 1; p < count; ++p) {
    const auto& [i, j] = s.pairs[p];
    int best_ms = -1, best_mf = -1, best_mb = -1, best_dt = -1;
    for (int q = 0; q < count; ++q) {
      const auto& [g, h] = s.pairs[q];
      if (!s.right_le(q, p)) continue;
      if (h != j) best_ms = q;
      if (g != i) best_mf = q;
      if (s.right_lt(q, p)) {
        best_mb = q;
        if (!s.adjacent(g, i) && !s.adjacent(g, j) && !s.adjacent(h, i) &&
            !s.adjacent(h, j)) {
          best_dt = q;
        }
      }
    }
    internal_check(best_ms >= 0 && best_mf >= 0 && best_mb >= 0 && best_dt >= 0,
                   "every predecessor set contains the sentinel pair");
    for (int q = 0; q < count; ++q) {
      const auto& [g, h] = s.pairs[q];
      if (!s.right_le(q, p)) continue;
      if (h != j) {
        internal_check(s.right_le(q, best_ms), "minus_second must dominate");
      }
      if (g != i) {
        internal_check(s.right_le(q, best_mf), "minus_first must dominate");
      }
      if (s.right_lt(q, p)) {
        internal_check(s.right_le(q, best_mb), "minus_both must dominate");
        if (!s.adjacent(g, i) && !s.adjacent(g, j) && !s.adjacent(h, i) &&
            !s.adjacent(h, j)) {
          internal_check(s.right_le(q, best_dt), "detached must dominate");
        }
      }
    }
    s.minus_second[p] = best_ms;
    s.minus_first[p] = best_mf;
    s.minus_both[p] = best_mb;
    s.detached[p] = best_dt;
  }
  return s;
}

PermutationDp::PermutationDp(PermutationStructure structure)
    : s_(std::move(structure)) {}

std::uint64_t PermutationDp::a_key(int pair) {
  return (static_cast<std::uint64_t>(kKindA) << 62) |
         (static_cast<std::uint64_t>(pair) << 40);
}

std::uint64_t PermutationDp::b_key(int pair, int ctx) {
  return (static_cast<std::uint64_t>(kKindB) << 62) |
         (static_cast<std::uint64_t>(pair) << 40) |
         (static_cast<std::uint64_t>(ctx) << 20);
}

std::uint64_t PermutationDp::c_key(int pair, int ctx1, int ctx2) {
  return (static_cast<std::uint64_t>(kKindC) << 62) |
         (static_cast<std::uint64_t>(pair) << 40) |
         (static_cast<std::uint64_t>(ctx1) << 20) |
         static_cast<std::uint64_t>(ctx2);
}

namespace {

// States within one pair collapse toward A through a fixed ladder:
// C with an edge second context (4) -> C with a single second context (3)
// -> B with an edge context (2) -> B with a single context (1) -> A (0).
// Every recurrence step either descends this ladder or moves to a pair with
// a strictly smaller id, which bounds every evaluation chain.
int state_rank(const PermutationStructure& s, std::uint64_t key) {
  switch (key_kind(key)) {
    case kKindA:
      return 0;
    case kKindB: {
      const auto& [x, y] = s.pairs[key_ctx1(key)];
      return x == y ? 1 : 2;
    }
    default: {
      const auto& [z, w] = s.pairs[key_ctx2(key)];
      return z == w ? 3 : 4;
    }
  }
}

}  // namespace

void PermutationDp::validate_state(std::uint64_t key) const {
  const int kind = key_kind(key);
  const int p = key_pair(key);
  const int c1 = key_ctx1(key);
  const int c2 = key_ctx2(key);
  const int count = s_.pair_count();
  internal_check(kind >= kKindA && kind <= kKindC, "unknown state kind");
  internal_check(p >= 0 && p < count && c1 >= 0 && c1 < count && c2 >= 0 &&
                     c2 < count,
                 "state pair id out of range");
  const auto& [i, j] = s_.pairs[p];

  if (kind == kKindA) {
    internal_check(c1 == 0 && c2 == 0, "A states carry no context");
    return;
  }

  if (kind == kKindB) {
    internal_check(c1 >= 1 && c2 == 0, "B states carry one real context");
    const auto& [x, y] = s_.pairs[c1];
    if (x == y) {
      internal_check(!s_.universe_has(p, x),
                     "single context must lie outside the universe");
    } else {
      internal_check(j < y && s_.bot_pos[i] < s_.bot_pos[x],
                     "edge context must lie right of the pair");
    }
    return;
  }

  // Only the conditions that hold for every materialized state are asserted.
  // Context rewrites via leftmost pairs can hand down second contexts that do
  // not touch the first context (single z) or do not interlock with it (edge
  // zw), and they can push the second context's position past the simple
  // right-of-the-pair window, so only outside-the-universe is required of it.
  // Guarded candidates can also track terminal vertices, so terminal-freeness
  // is not a context requirement either; what every reachable state does
  // satisfy is that its tracked vertices coexist, i.e. do not already close a
  // terminal cycle among themselves.
  internal_check(c1 >= 1 && c2 >= 1, "C states carry two real contexts");
  const auto& [x, y] = s_.pairs[c1];
  const auto& [z, w] = s_.pairs[c2];
  internal_check(x != y, "first context must be an edge pair");
  internal_check(j < y && s_.bot_pos[i] < s_.bot_pos[x],
                 "first context must lie right of the pair");
  internal_check(s_.left_lt(c1, c2),
                 "second context must lie strictly left-after the first");
  internal_check(!s_.universe_has(p, z) && !s_.universe_has(p, w),
                 "second context must lie outside the universe");
  std::vector<int> ctx{x, y, z};
  if (w != z) ctx.push_back(w);
  internal_check(verts_coexist(s_, ctx),
                 "context vertices must not close a terminal cycle");
}

void PermutationDp::candidates_for(std::uint64_t key,
                                   std::vector<Candidate>& out) const {
  out.clear();
  const int kind = key_kind(key);
  const int p = key_pair(key);
  const int c1 = key_ctx1(key);
  const int c2 = key_ctx2(key);
  internal_check(p != 0, "the sentinel pair is a base state");
  const auto& [i, j] = s_.pairs[p];
  const bool self = (i == j);
  const bool si = s_.in_s[i] != 0;
  const bool sj = s_.in_s[j] != 0;

  const int my_rank = state_rank(s_, key);
  auto push = [&](std::uint64_t child, int add1 = 0, int add2 = 0) {
    const int child_pair = key_pair(child);
    internal_check(child_pair < p ||
                       (child_pair == p && state_rank(s_, child) < my_rank),
                   "child states must strictly precede their parent");
    out.push_back(Candidate{child, add1, add2});
  };

  // Splits a vertex set into its leftmost crossing pair and the rest.
  auto leftmost_split =
      [&](std::vector<int> verts) -> std::pair<int, std::vector<int>> {
    const int lp = s_.leftmost_pair(verts);
    const auto& [a, b] = s_.pairs[lp];
    std::vector<int> rest;
    for (int v : verts) {
      if (v != a && v != b) rest.push_back(v);
    }
    return {lp, rest};
  };

  if (kind == kKindA) {
    if (self) {
      // Everything in the universe precedes i in both orders, so i is
      // isolated there and always joins.
      push(a_key(s_.minus_both[p]), i);
    } else if (si || sj) {
      push(a_key(s_.minus_second[p]));
      push(a_key(s_.minus_first[p]));
      push(b_key(s_.detached[s_.self_pair[j]], s_.self_pair[i]), i, j);
      push(b_key(s_.detached[s_.self_pair[i]], s_.self_pair[j]), i, j);
    } else {
      push(a_key(s_.minus_second[p]));
      push(a_key(s_.minus_first[p]));
      push(b_key(s_.minus_both[p], p), i, j);
    }
    return;
  }

  if (kind == kKindB) {
    const auto& [x, y] = s_.pairs[c1];
    if (x == y) {
      if (self) {
        if (!s_.adjacent(i, x)) {
          push(a_key(p));
        } else {
          push(b_key(s_.minus_both[p], c1), i);
        }
        return;
      }
      const bool ix = s_.adjacent(i, x);
      const bool jx = s_.adjacent(j, x);
      if (!ix && !jx) {
        push(a_key(p));
        return;
      }
      push(b_key(s_.minus_second[p], c1));
      push(b_key(s_.minus_first[p], c1));
      if (ix && !jx) {
        if (si || sj) {
          push(b_key(s_.detached[s_.self_pair[j]], s_.self_pair[i]), i, j);
          push(b_key(s_.detached[s_.pair_of(i, x)], s_.self_pair[j]), i, j);
        } else if (s_.in_s[x]) {
          push(b_key(s_.minus_both_avoiding(p, x), p), i, j);
        } else {
          auto [lp, rest] = leftmost_split({i, j, x});
          internal_check(rest.size() == 1, "one vertex must remain");
          push(c_key(s_.minus_both[p], lp, s_.self_pair[rest[0]]), i, j);
        }
      } else if (!ix && jx) {
        if (si || sj) {
          push(b_key(s_.detached[s_.pair_of(x, j)], s_.self_pair[i]), i, j);
          push(b_key(s_.detached[s_.self_pair[i]], s_.self_pair[j]), i, j);
        } else if (s_.in_s[x]) {
          push(b_key(s_.minus_both_avoiding(p, x), p), i, j);
        } else {
          auto [lp, rest] = leftmost_split({i, j, x});
          internal_check(rest.size() == 1, "one vertex must remain");
          push(c_key(s_.minus_both[p], lp, s_.self_pair[rest[0]]), i, j);
        }
      } else {
        if (!si && !sj && !s_.in_s[x]) {
          auto [lp, rest] = leftmost_split({i, j, x});
          internal_check(rest.size() == 1, "one vertex must remain");
          push(c_key(s_.minus_both[p], lp, s_.self_pair[rest[0]]), i, j);
        }
      }
      return;
    }
    // Edge context (x, y).
    if (self) {
      if (!s_.adjacent(i, y)) {
        push(b_key(p, s_.self_pair[x]));
      } else if (!s_.adjacent(i, x)) {
        push(b_key(p, s_.self_pair[y]));
      } else if (si || s_.in_s[x] || s_.in_s[y]) {
        // i, x and y form a triangle here, so keeping i closes a cycle; that
        // is allowed only when the triangle carries no terminal.
        push(b_key(s_.minus_both[p], c1));
      } else {
        push(b_key(s_.minus_both[p], c1), i);
      }
      return;
    }
    if (!s_.adjacent(i, y)) {
      push(b_key(p, s_.self_pair[x]));
      return;
    }
    if (!s_.adjacent(j, x)) {
      push(b_key(p, s_.self_pair[y]));
      return;
    }
    push(b_key(s_.minus_second[p], c1));
    push(b_key(s_.minus_first[p], c1));
    // i-j-x-y is a cycle here (edges ij, jx, xy, yi), so keeping both ends
    // is possible only when none of the four vertices is a terminal.
    if (!si && !sj && !s_.in_s[x] && !s_.in_s[y]) {
      auto [lp, rest] = leftmost_split({i, j, x, y});
      internal_check(rest.size() == 2, "two vertices must remain");
      push(c_key(s_.minus_both[p], lp, s_.leftmost_pair(rest)), i, j);
    }
    return;
  }

  // kind == kKindC
  const auto& [x, y] = s_.pairs[c1];
  const auto& [z, w] = s_.pairs[c2];
  if (z == w) {
    if (self) {
      if (!s_.adjacent(i, z)) {
        push(b_key(p, c1));
      } else if (si || s_.in_s[x] || s_.in_s[y] || s_.in_s[z]) {
        // With {i,z} adjacent, the context layout forces a cycle on
        // i, x, y, z, so i joins only when that cycle is terminal-free.
        push(c_key(s_.minus_both[p], c1, c2));
      } else {
        push(c_key(s_.minus_both[p], c1, c2), i);
      }
      return;
    }
    if (!s_.adjacent(i, z) && !s_.adjacent(j, z)) {
      push(b_key(p, c1));
      return;
    }
    push(c_key(s_.minus_second[p], c1, c2));
    push(c_key(s_.minus_first[p], c1, c2));
    // The redistribution below drops one of the five vertices, which is safe
    // only when z lies fully right of the pair: a left-positioned z admits
    // terminal cycles through the dropped vertex that no replacement cycle
    // covers, so those states go through the guarded enumeration instead.
    if (!si && !sj && !s_.in_s[x] && !s_.in_s[y] && !s_.in_s[z] &&
        j < z && s_.bot_pos[i] < s_.bot_pos[z]) {
      auto [lp, rest] = leftmost_split({i, j, x, y, z});
      internal_check(rest.size() == 3, "three vertices must remain");
      push(c_key(s_.minus_both[p], lp, s_.leftmost_pair(rest)), i, j);
    } else {
      const std::vector<int> world{i, j, x, y, z};
      if (verts_coexist(s_, world)) guarded_retain(p, world, i, j, out);
    }
    return;
  }
  if (self) {
    const std::vector<int> world{i, x, y, z, w};
    if (!s_.adjacent(i, w)) {
      if (collapse_safe(p, w, {x, y, z})) {
        push(c_key(p, c1, s_.self_pair[z]));
      } else {
        if (verts_coexist(s_, world)) guarded_retain(p, world, i, 0, out);
        push(c_key(s_.minus_both[p], c1, c2));
      }
      return;
    }
    if (!s_.adjacent(i, z)) {
      if (collapse_safe(p, z, {x, y, w})) {
        push(c_key(p, c1, s_.self_pair[w]));
      } else {
        if (verts_coexist(s_, world)) guarded_retain(p, world, i, 0, out);
        push(c_key(s_.minus_both[p], c1, c2));
      }
      return;
    }
    // i, z and w form a triangle, so keeping i requires a terminal-free
    // neighbourhood; the direct keep additionally needs the interlocking
    // edges xw and yz that make every blocked cycle visible to the child.
    if (!si && !s_.in_s[x] && !s_.in_s[y] && !s_.in_s[z] && !s_.in_s[w] &&
        s_.adjacent(x, w) && s_.adjacent(y, z)) {
      push(c_key(s_.minus_both[p], c1, c2), i);
    } else {
      if (!si && verts_coexist(s_, world)) guarded_retain(p, world, i, 0, out);
      push(c_key(s_.minus_both[p], c1, c2));
    }
    return;
  }
  const std::vector<int> world{i, j, x, y, z, w};
  if (!s_.adjacent(i, w)) {
    if (collapse_safe(p, w, {x, y, z})) {
      push(c_key(p, c1, s_.self_pair[z]));
    } else {
      push(c_key(s_.minus_second[p], c1, c2));
      push(c_key(s_.minus_first[p], c1, c2));
      if (verts_coexist(s_, world)) guarded_retain(p, world, i, j, out);
    }
    return;
  }
  if (!s_.adjacent(j, z)) {
    if (collapse_safe(p, z, {x, y, w})) {
      push(c_key(p, c1, s_.self_pair[w]));
    } else {
      push(c_key(s_.minus_second[p], c1, c2));
      push(c_key(s_.minus_first[p], c1, c2));
      if (verts_coexist(s_, world)) guarded_retain(p, world, i, j, out);
    }
    return;
  }
  push(c_key(s_.minus_second[p], c1, c2));
  push(c_key(s_.minus_first[p], c1, c2));
  // As above, the two-dropped redistribution needs the second context fully
  // right of the pair in addition to the interlocking edges xw and yz.
  if (!si && !sj && !s_.in_s[x] && !s_.in_s[y] && !s_.in_s[z] && !s_.in_s[w] &&
      s_.adjacent(x, w) && s_.adjacent(y, z) &&
      j < w && s_.bot_pos[i] < s_.bot_pos[z]) {
    auto [lp, rest] = leftmost_split({i, j, x, y, z, w});
    internal_check(rest.size() == 4, "four vertices must remain");
    push(c_key(s_.minus_both[p], lp, s_.leftmost_pair(rest)), i, j);
  } else {
    if (verts_coexist(s_, world)) guarded_retain(p, world, i, j, out);
  }
}

bool PermutationDp::collapse_safe(int p, int dropped,
                                  const std::vector<int>& kept) const {
  // Dropping a context vertex is exact when (a) the dropped vertex closes no
  // terminal cycle together with the other tracked vertices, (b) nothing in
  // the universe (pair ends included) is adjacent to it, and (c) no universe
  // vertex that the remaining tracked vertices would still admit closes a
  // terminal cycle once the dropped vertex is added back.  Any cycle lost by
  // the collapse must route through the dropped vertex, and with (b) its two
  // neighbours on an induced such cycle lie among the tracked vertices, so a
  // lost cycle is either tracked-only (a) or a square with one universe
  // vertex (c).
  std::vector<int> with = kept;
  with.push_back(dropped);
  if (!verts_coexist(s_, with)) return false;
  std::vector<int> probe = kept;
  probe.push_back(0);
  std::vector<int> probe_plus = kept;
  probe_plus.push_back(0);
  probe_plus.push_back(dropped);
  const std::size_t slot = kept.size();
  for (int u = 1; u <= s_.n; ++u) {
    if (!s_.universe_has(p, u)) continue;
    if (s_.adjacent(u, dropped)) return false;
    // A square closed by adding the dropped vertex back routes through u with
    // both cycle neighbours among the kept vertices (u avoids the dropped
    // one), so u needs at least two kept neighbours to matter.
    int kept_nbrs = 0;
    for (int v : kept) kept_nbrs += s_.adjacent(u, v) ? 1 : 0;
    if (kept_nbrs < 2) continue;
    probe[slot] = u;
    if (!verts_coexist(s_, probe)) continue;
    probe_plus[slot] = u;
    if (!verts_coexist(s_, probe_plus)) return false;
  }
  return true;
}

void PermutationDp::tracked_children(int q, const std::vector<int>& tracked,
                                     std::vector<std::uint64_t>& out) const {
  const auto& [g, h] = s_.pairs[q];
  const int tn = static_cast<int>(tracked.size());
  auto outside = [&](int v) { return !s_.universe_has(q, v); };
  auto c1_ok = [&](int pr) {
    const auto& [a, b] = s_.pairs[pr];
    return h < b && s_.bot_pos[g] < s_.bot_pos[a];
  };
  // Crossing pair id of u and v, or 0 when they do not cross.
  auto try_pair = [&](int u, int v) {
    if (!s_.adjacent(u, v)) return 0;
    if (u > v) std::swap(u, v);
    return s_.pair_of(u, v);
  };
  if (tn == 0) {
    out.push_back(a_key(q));
    return;
  }
  if (tn == 1) {
    internal_check(outside(tracked[0]),
                   "tracked vertex inside the child universe");
    out.push_back(b_key(q, s_.self_pair[tracked[0]]));
    return;
  }
  if (tn == 2) {
    const int pr = try_pair(tracked[0], tracked[1]);
    if (pr != 0 && c1_ok(pr)) out.push_back(b_key(q, pr));
    return;
  }
  if (tn == 3) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const int pr = try_pair(tracked[a], tracked[b]);
        if (pr == 0 || !c1_ok(pr)) continue;
        const int single = tracked[3 - a - b];
        internal_check(outside(single),
                       "tracked vertex inside the child universe");
        const int sp = s_.self_pair[single];
        if (s_.left_lt(pr, sp)) out.push_back(c_key(q, pr, sp));
      }
    }
    return;
  }
  internal_check(tn == 4, "tracked sets beyond four vertices are never used");
  static constexpr int kSplit[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (const auto& sel : kSplit) {
    const int pa = try_pair(tracked[sel[0]], tracked[sel[1]]);
    const int pb = try_pair(tracked[sel[2]], tracked[sel[3]]);
    if (pa == 0 || pb == 0) continue;
    if (c1_ok(pa) && s_.left_lt(pa, pb)) out.push_back(c_key(q, pa, pb));
    if (c1_ok(pb) && s_.left_lt(pb, pa)) out.push_back(c_key(q, pb, pa));
  }
}

void PermutationDp::guarded_retain(int p, const std::vector<int>& world,
                                   int add1, int add2,
                                   std::vector<Candidate>& out) const {
  // Candidates that keep every world vertex (the pair ends joining X plus
  // the tracked contexts).  Each candidate delegates to a state over some
  // pair q strictly right-below p whose contexts are a subset of the world.
  // A tracked subset is sound when every set of at most three child-universe
  // vertices that closes a terminal cycle together with the world is already
  // rejected by the tracked part alone: induced cycles here have at most
  // four vertices, so a cycle lost by dropping a world vertex involves at
  // most three universe vertices, and a child refusing those cannot retain a
  // set that entangles with the dropped part.  Smaller sound tracked sets
  // dominate larger ones over the same pair, so supersets of a tracked set
  // that produced a child are skipped.
  const int wn = static_cast<int>(world.size());
  internal_check(wn >= 1 && wn <= 6, "unexpected world size");
  std::set<std::uint64_t> seen;
  std::set<int> processed;
  std::vector<std::uint64_t> children;
  std::unordered_map<std::uint64_t, std::vector<unsigned>> probe_cache;
  std::vector<const std::vector<unsigned>*> bad_rejectors;
  std::vector<int> wp;
  std::vector<int> masks_by_popcount(1 << wn);
  for (int m = 0; m < (1 << wn); ++m) masks_by_popcount[m] = m;
  std::stable_sort(masks_by_popcount.begin(), masks_by_popcount.end(),
                   [](int a, int b) {
                     return __builtin_popcount(a) < __builtin_popcount(b);
                   });

  // Child pair per avoided world subset: the largest-id pair strictly
  // right-below p whose ends are non-adjacent to everything in the subset.
  // One downward scan serves every subset at once, since a pair whose ends
  // touch exactly the world subset `blocked` is the answer for all still
  // unserved subsets disjoint from `blocked`.
  std::vector<int> child_pair(static_cast<std::size_t>(1) << wn, -1);
  {
    int unassigned = 1 << wn;
    for (int q = p - 1; q >= 1 && unassigned > 0; --q) {
      if (!s_.right_lt(q, p)) continue;
      const auto& [g, h] = s_.pairs[q];
      unsigned blocked = 0;
      for (int b = 0; b < wn; ++b) {
        if (s_.adjacent(g, world[b]) || s_.adjacent(h, world[b])) {
          blocked |= 1u << b;
        }
      }
      for (int mask = 0; mask < (1 << wn); ++mask) {
        if (child_pair[static_cast<std::size_t>(mask)] == -1 &&
            (static_cast<unsigned>(mask) & blocked) == 0) {
          child_pair[static_cast<std::size_t>(mask)] = q;
          --unassigned;
        }
      }
    }
    for (int& q : child_pair) {
      if (q == -1) q = 0;
    }
  }
  for (int avoid_mask = 0; avoid_mask < (1 << wn); ++avoid_mask) {
    const int q = child_pair[static_cast<std::size_t>(avoid_mask)];
    if (!processed.insert(q).second) continue;
    internal_check(q < p, "guarded child pair must precede its parent");
    const std::vector<int> uni = s_.universe(q);
    const int un = static_cast<int>(uni.size());

    // Universe probes of size one to three that the world turns into a
    // terminal cycle.  Only inclusion-minimal bad probes can change a
    // soundness verdict (a tracked set rejecting a probe also rejects its
    // supersets, since the closed cycle persists), and a minimal bad probe
    // is the universe part of a chordless terminal cycle.  Chordless cycles
    // here have at most four vertices, which fixes the possible shapes;
    // world-neighbourhood masks filter the candidates before checking:
    //   single u:        u plus a world path, so u needs two world neighbours;
    //   adjacent pair:   consecutive on the cycle, both with world neighbours;
    //   detached pair:   opposite corners of a square, two common world
    //                    neighbours;
    //   triple:          a universe path u-mid-t closed by one world vertex
    //                    adjacent to u and t.
    // Each bad probe is summarized by its rejector masks: the minimal world
    // subsets that complete one of its terminal cycles.  A tracked set
    // rejects the probe exactly when it contains a rejector, so the
    // soundness test below is pure mask arithmetic.  Verdicts are cached
    // across child pairs, whose universes overlap heavily.
    bad_rejectors.clear();
    std::vector<unsigned> world_nbrs(static_cast<std::size_t>(un), 0);
    for (int a = 0; a < un; ++a) {
      for (int b = 0; b < wn; ++b) {
        if (s_.adjacent(uni[static_cast<std::size_t>(a)], world[b])) {
          world_nbrs[static_cast<std::size_t>(a)] |= 1u << b;
        }
      }
    }
    auto eval_probe = [&](std::initializer_list<int> probe) {
      std::uint64_t key = 0;
      for (int v : probe) {
        key = key * static_cast<std::uint64_t>(s_.n + 1) +
              static_cast<std::uint64_t>(v);
      }
      auto it = probe_cache.find(key);
      if (it == probe_cache.end()) {
        std::vector<unsigned> rejectors;
        wp.assign(world.begin(), world.end());
        wp.insert(wp.end(), probe.begin(), probe.end());
        if (!verts_coexist(s_, wp)) {
          // Ascending mask order visits subsets before supersets, so the
          // dominance skip keeps exactly the minimal completing subsets.
          for (unsigned wsub = 0; wsub < (1u << wn); ++wsub) {
            if (__builtin_popcount(wsub) > 3) continue;
            bool dominated = false;
            for (unsigned r : rejectors) {
              if ((wsub & r) == r) {
                dominated = true;
                break;
              }
            }
            if (dominated) continue;
            wp.clear();
            for (int b = 0; b < wn; ++b) {
              if (wsub & (1u << b)) wp.push_back(world[b]);
            }
            wp.insert(wp.end(), probe.begin(), probe.end());
            if (!verts_coexist(s_, wp)) rejectors.push_back(wsub);
          }
          internal_check(!rejectors.empty(),
                         "a bad probe needs a completing world subset");
        }
        it = probe_cache.emplace(key, std::move(rejectors)).first;
      }
      if (!it->second.empty()) bad_rejectors.push_back(&it->second);
    };
    for (int a = 0; a < un; ++a) {
      if (__builtin_popcount(world_nbrs[static_cast<std::size_t>(a)]) >= 2) {
        eval_probe({uni[static_cast<std::size_t>(a)]});
      }
    }
    for (int a = 0; a < un; ++a) {
      const unsigned wa = world_nbrs[static_cast<std::size_t>(a)];
      for (int b = a + 1; b < un; ++b) {
        const unsigned wb = world_nbrs[static_cast<std::size_t>(b)];
        const bool linked = s_.adjacent(uni[static_cast<std::size_t>(a)],
                                        uni[static_cast<std::size_t>(b)]);
        if (linked ? (wa != 0 && wb != 0)
                   : __builtin_popcount(wa & wb) >= 2) {
          eval_probe({uni[static_cast<std::size_t>(a)],
                      uni[static_cast<std::size_t>(b)]});
        }
      }
    }
    for (int mid = 0; mid < un; ++mid) {
      const int m_vert = uni[static_cast<std::size_t>(mid)];
      for (int a = 0; a < un; ++a) {
        if (a == mid || !s_.adjacent(m_vert, uni[static_cast<std::size_t>(a)]))
          continue;
        for (int b = a + 1; b < un; ++b) {
          if (b == mid ||
              !s_.adjacent(m_vert, uni[static_cast<std::size_t>(b)]))
            continue;
          if ((world_nbrs[static_cast<std::size_t>(a)] &
               world_nbrs[static_cast<std::size_t>(b)]) != 0) {
            eval_probe({uni[static_cast<std::size_t>(a)], m_vert,
                        uni[static_cast<std::size_t>(b)]});
          }
        }
      }
    }

    std::vector<int> sound_masks;
    std::vector<int> tracked;
    for (int tmask : masks_by_popcount) {
      if (__builtin_popcount(tmask) > 4) continue;
      bool dominated = false;
      for (int sm : sound_masks) {
        if ((tmask & sm) == sm) {
          dominated = true;
          break;
        }
      }
      if (dominated) continue;
      bool sound = true;
      for (const std::vector<unsigned>* rejectors : bad_rejectors) {
        bool rejects = false;
        for (unsigned r : *rejectors) {
          if ((static_cast<unsigned>(tmask) & r) == r) {
            rejects = true;
            break;
          }
        }
        if (!rejects) {
          sound = false;
          break;
        }
      }
      if (!sound) continue;
      tracked.clear();
      for (int b = 0; b < wn; ++b) {
        if (tmask & (1 << b)) tracked.push_back(world[b]);
      }
      children.clear();
      tracked_children(q, tracked, children);
      // All decompositions of one tracked set over one pair share a value,
      // so any emitted child covers this set and makes supersets redundant.
      if (!children.empty()) sound_masks.push_back(tmask);
      for (std::uint64_t child : children) {
        if (seen.insert(child).second) {
          out.push_back(Candidate{child, add1, add2});
        }
      }
    }
  }
}

const PermutationDp::Entry& PermutationDp::ensure(std::uint64_t key) {
  {
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;
  }

  std::vector<std::uint64_t> stack{key};
  // Candidate lists for states waiting on unevaluated children, so the list
  // is built once per state even though the state surfaces twice.
  std::unordered_map<std::uint64_t, std::vector<Candidate>> pending;
  std::vector<Candidate> cands;
  while (!stack.empty()) {
    const std::uint64_t k = stack.back();
    if (memo_.find(k) != memo_.end()) {
      stack.pop_back();
      continue;
    }
    if (key_pair(k) == 0) {
      validate_state(k);
      memo_.emplace(k, Entry{0, kBaseChoice});
      stack.pop_back();
      continue;
    }
    auto pend = pending.find(k);
    if (pend == pending.end()) {
      validate_state(k);
      candidates_for(k, cands);
      internal_check(!cands.empty(), "non-base states need an alternative");
      internal_check(cands.size() < kBaseChoice, "candidate list too long");
      pend = pending.emplace(k, cands).first;
    }
    bool ready = true;
    for (const Candidate& c : pend->second) {
      if (memo_.find(c.child) == memo_.end()) {
        stack.push_back(c.child);
        ready = false;
      }
    }
    if (!ready) continue;
    Weight best = 0;
    std::uint16_t choice = kBaseChoice;
    for (std::size_t idx = 0; idx < pend->second.size(); ++idx) {
      const Candidate& c = pend->second[idx];
      const Weight value = memo_.at(c.child).weight + s_.weights[c.add1] +
                           s_.weights[c.add2];
      if (choice == kBaseChoice || value > best) {
        best = value;
        choice = static_cast<std::uint16_t>(idx);
      }
    }
    memo_.emplace(k, Entry{best, choice});
    pending.erase(pend);
    stack.pop_back();
  }
  return memo_.at(key);
}

Weight PermutationDp::value(std::uint64_t key) { return ensure(key).weight; }

std::vector<std::uint64_t> PermutationDp::memoized_keys() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(memo_.size());
  for (const auto& [key, entry] : memo_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<int> PermutationDp::witness(std::uint64_t key) {
  const Weight total = ensure(key).weight;
  std::vector<int> picked;
  std::vector<Candidate> cands;
  std::uint64_t k = key;
  while (true) {
    const Entry& entry = memo_.at(k);
    if (entry.choice == kBaseChoice) {
      internal_check(key_pair(k) == 0, "only the sentinel pair is a base");
      break;
    }
    candidates_for(k, cands);
    internal_check(entry.choice < cands.size(), "stored choice out of range");
    const Candidate& c = cands[entry.choice];
    if (c.add1 != 0) picked.push_back(c.add1);
    if (c.add2 != 0) picked.push_back(c.add2);
    k = c.child;
  }
  std::sort(picked.begin(), picked.end());
  internal_check(std::adjacent_find(picked.begin(), picked.end()) ==
                     picked.end(),
                 "witness vertices must be distinct");
  Weight sum = 0;
  for (int v : picked) sum += s_.weights[v];
  internal_check(sum == total, "witness weight must match the state value");
  return picked;
}

Weight PermutationDp::best_weight() {
  return value(a_key(s_.final_pair()));
}

std::vector<int> PermutationDp::best_retained() {
  return witness(a_key(s_.final_pair()));
}

Solution solve_permutation(const Instance& inst) {
  PermutationStructure structure = permutation_structure(inst);
  PermutationDp dp(std::move(structure));
  const Weight best = dp.best_weight();
  const std::vector<int> kept = dp.best_retained();
  std::vector<char> retained(static_cast<std::size_t>(inst.n) + 1, 0);
  for (int v : kept) retained[v] = 1;
  Solution sol = make_solution(inst, retained, "permutation");
  internal_check(sol.removed_weight == inst.total_weight() - best,
                 "retained weight must match the root state value");
  return sol;
}

}  // namespace sfvs
