#include "sfvs/cobipartite.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

namespace {

// Vertices of `pool` not adjacent to any vertex of `avoid`.
std::vector<int> untouched(const Graph& g, const std::vector<int>& pool,
                           const std::vector<int>& avoid) {
  std::vector<int> out;
  for (int v : pool) {
    bool touched = false;
    for (int u : avoid) {
      if (g.adjacent(v, u)) {
        touched = true;
        break;
      }
    }
    if (!touched) out.push_back(v);
  }
  return out;
}

// Every pool vertex adjacent to each listed vertex.
bool all_touch(const Graph& g, const std::vector<int>& pool,
               const std::vector<int>& targets) {
  for (int v : pool) {
    for (int u : targets) {
      if (!g.adjacent(v, u)) return false;
    }
  }
  return true;
}

// Every pool vertex adjacent to at least one of u, v.
bool jointly_dominate(const Graph& g, const std::vector<int>& pool, int u,
                      int v) {
  for (int w : pool) {
    if (!g.adjacent(w, u) && !g.adjacent(w, v)) return false;
  }
  return true;
}

bool acyclic_subset(const Graph& g, const std::vector<int>& verts) {
  const int k = static_cast<int>(verts.size());
  std::vector<int> parent(k);
  for (int i = 0; i < k; ++i) parent[i] = i;
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!g.adjacent(verts[i], verts[j])) continue;
      const int ri = find(i);
      const int rj = find(j);
      if (ri == rj) return false;
      parent[ri] = rj;
    }
  }
  return true;
}

}  // namespace

Cobipartition cobipartition(const Graph& g, int n) {
  internal_check(g.n() == n, "cobipartition: vertex count mismatch");
  std::vector<int> color(static_cast<std::size_t>(n) + 1, -1);
  for (int root = 1; root <= n; ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;
    std::queue<int> pending;
    pending.push(root);
    while (!pending.empty()) {
      const int v = pending.front();
      pending.pop();
      for (int u = 1; u <= n; ++u) {
        if (u == v || g.adjacent(v, u)) continue;  // complement edges only
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          pending.push(u);
        } else if (color[u] == color[v]) {
          throw ValidationError(
              "not co-bipartite: the complement graph has an odd cycle "
              "(vertices " +
              std::to_string(v) + " and " + std::to_string(u) +
              " demand the same side)");
        }
      }
    }
  }
  Cobipartition parts;
  for (int v = 1; v <= n; ++v) {
    (color[v] == 0 ? parts.side_a : parts.side_b).push_back(v);
  }
  return parts;
}

// The candidates mirror how a retained set can look on two cliques: per side
// at most two terminals survive (three pairwise-adjacent vertices with a
// terminal are a terminal triangle), and once the surviving terminals are
// fixed, the remaining room for that side's non-terminals and for crossing
// helpers has a closed form.  Families 2-5 / 6-9 and 14-15 / 16-17 are the
// two sides' mirror images of each other.
void enumerate_cobipartite_candidates(
    const Instance& inst, const Cobipartition& parts,
    const std::function<void(int, const std::vector<int>&)>& emit) {
  const Graph g = build_adjacency(inst);
  std::vector<int> a_s, a_r, b_s, b_r;
  for (int v : parts.side_a) (inst.in_s[v] ? a_s : a_r).push_back(v);
  for (int v : parts.side_b) (inst.in_s[v] ? b_s : b_r).push_back(v);

  const auto send = [&](int family, std::vector<int> cand) {
    std::sort(cand.begin(), cand.end());
    emit(family, cand);
  };
  const auto plus = [](std::vector<int> base, std::vector<int> more) {
    base.insert(base.end(), more.begin(), more.end());
    return base;
  };

  // 1: no terminal retained; every non-terminal fits.
  send(1, plus(a_r, b_r));

  // 2-5: exactly one terminal kept, on side A.
  for (int as : a_s) {
    const std::vector<int> safe_b = untouched(g, b_r, {as});
    if (safe_b.size() == b_r.size()) {
      send(2, plus({as}, b_r));
    }
    for (int br : b_r) {
      if (g.adjacent(as, br)) {
        send(3, plus({as, br}, safe_b));
      }
    }
    for (int ar : a_r) {
      send(4, plus({as, ar}, safe_b));
      for (int br : b_r) {
        if (g.adjacent(as, br) && !g.adjacent(ar, br)) {
          send(5, plus({as, ar, br}, untouched(g, b_r, {as, ar})));
        }
      }
    }
  }

  // 6-9: exactly one terminal kept, on side B.
  for (int bs : b_s) {
    const std::vector<int> safe_a = untouched(g, a_r, {bs});
    if (safe_a.size() == a_r.size()) {
      send(6, plus({bs}, a_r));
    }
    for (int ar : a_r) {
      if (g.adjacent(bs, ar)) {
        send(7, plus({bs, ar}, safe_a));
      }
    }
    for (int br : b_r) {
      send(8, plus({bs, br}, safe_a));
      for (int ar : a_r) {
        if (g.adjacent(bs, ar) && !g.adjacent(br, ar)) {
          send(9, plus({bs, br, ar}, untouched(g, a_r, {bs, br})));
        }
      }
    }
  }

  // 10-13: one terminal per side plus at most one helper per side.
  for (int as : a_s) {
    for (int bs : b_s) {
      if (all_touch(g, a_r, {as, bs}) && all_touch(g, b_r, {as, bs})) {
        send(10, {as, bs});
      }
      for (int ar : a_r) {
        if (acyclic_subset(g, {as, ar, bs}) &&
            jointly_dominate(g, b_r, as, ar)) {
          send(11, {as, ar, bs});
        }
      }
      for (int br : b_r) {
        if (acyclic_subset(g, {as, bs, br}) &&
            jointly_dominate(g, a_r, bs, br)) {
          send(12, {as, bs, br});
        }
      }
      for (int ar : a_r) {
        for (int br : b_r) {
          if (acyclic_subset(g, {as, ar, bs, br})) {
            send(13, {as, ar, bs, br});
          }
        }
      }
    }
  }

  // 14-15: two terminals on side A, none on side B.
  for (std::size_t i = 0; i < a_s.size(); ++i) {
    for (std::size_t j = i + 1; j < a_s.size(); ++j) {
      const int as = a_s[i];
      const int as2 = a_s[j];
      std::vector<int> one_sided;  // adjacent to exactly one of the two
      std::vector<int> neither;
      std::vector<int> not_both;
      for (int br : b_r) {
        const bool t1 = g.adjacent(br, as);
        const bool t2 = g.adjacent(br, as2);
        if (!(t1 && t2)) not_both.push_back(br);
        if (t1 != t2) one_sided.push_back(br);
        if (!t1 && !t2) neither.push_back(br);
      }
      if (one_sided.empty()) {
        send(14, plus({as, as2}, not_both));
      }
      for (int br : one_sided) {
        send(15, plus({as, as2, br}, neither));
      }
    }
  }

  // 16-17: two terminals on side B, none on side A.
  for (std::size_t i = 0; i < b_s.size(); ++i) {
    for (std::size_t j = i + 1; j < b_s.size(); ++j) {
      const int bs = b_s[i];
      const int bs2 = b_s[j];
      std::vector<int> one_sided;
      std::vector<int> neither;
      std::vector<int> not_both;
      for (int ar : a_r) {
        const bool t1 = g.adjacent(ar, bs);
        const bool t2 = g.adjacent(ar, bs2);
        if (!(t1 && t2)) not_both.push_back(ar);
        if (t1 != t2) one_sided.push_back(ar);
        if (!t1 && !t2) neither.push_back(ar);
      }
      if (one_sided.empty()) {
        send(16, plus({bs, bs2}, not_both));
      }
      for (int ar : one_sided) {
        send(17, plus({bs, bs2, ar}, neither));
      }
    }
  }

  // 18-19: two terminals on side A and one on side B.
  for (std::size_t i = 0; i < a_s.size(); ++i) {
    for (std::size_t j = i + 1; j < a_s.size(); ++j) {
      for (int bs : b_s) {
        if (acyclic_subset(g, {a_s[i], a_s[j], bs})) {
          send(18, {a_s[i], a_s[j], bs});
        }
        for (int br : b_r) {
          if (acyclic_subset(g, {a_s[i], a_s[j], bs, br})) {
            send(19, {a_s[i], a_s[j], bs, br});
          }
        }
      }
    }
  }

  // 20-21: one terminal on side A and two on side B.
  for (int as : a_s) {
    for (std::size_t i = 0; i < b_s.size(); ++i) {
      for (std::size_t j = i + 1; j < b_s.size(); ++j) {
        if (acyclic_subset(g, {as, b_s[i], b_s[j]})) {
          send(20, {as, b_s[i], b_s[j]});
        }
        for (int ar : a_r) {
          if (acyclic_subset(g, {as, ar, b_s[i], b_s[j]})) {
            send(21, {as, ar, b_s[i], b_s[j]});
          }
        }
      }
    }
  }

  // 22: two terminals on each side.
  for (std::size_t i = 0; i < a_s.size(); ++i) {
    for (std::size_t j = i + 1; j < a_s.size(); ++j) {
      for (std::size_t k = 0; k < b_s.size(); ++k) {
        for (std::size_t l = k + 1; l < b_s.size(); ++l) {
          if (acyclic_subset(g, {a_s[i], a_s[j], b_s[k], b_s[l]})) {
            send(22, {a_s[i], a_s[j], b_s[k], b_s[l]});
          }
        }
      }
    }
  }
}

Solution solve_cobipartite(const Instance& inst) {
  validate_instance(inst);
  const Graph g = build_adjacency(inst);
  const Cobipartition parts = cobipartition(g, inst.n);

  Weight best_weight = -1;
  std::vector<int> best_removed;
  std::vector<char> best_mask;
  std::vector<char> mask(static_cast<std::size_t>(inst.n) + 1, 0);
  enumerate_cobipartite_candidates(
      inst, parts, [&](int family, const std::vector<int>& cand) {
        (void)family;
        std::fill(mask.begin(), mask.end(), 0);
        Weight weight = 0;
        for (int v : cand) {
          mask[v] = 1;
          weight += inst.weights[v];
        }
        if (weight < best_weight) return;
        if (!is_s_forest(g, inst.in_s, mask)) return;
        std::vector<int> removed;
        removed.reserve(inst.n - cand.size());
        for (int v = 1; v <= inst.n; ++v) {
          if (!mask[v]) removed.push_back(v);
        }
        if (weight > best_weight ||
            (weight == best_weight && removed < best_removed)) {
          best_weight = weight;
          best_removed = std::move(removed);
          best_mask = mask;
        }
      });
  internal_check(best_weight >= 0, "no valid co-bipartite candidate");

  const Solution sol = make_solution(inst, best_mask, "cobipartite");
  verify_solution(inst, g, sol);
  return sol;
}

}  // namespace sfvs
