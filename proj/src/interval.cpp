#include "sfvs/interval.hpp"

#include <algorithm>
#include <string>

namespace sfvs {

IntervalPredecessors interval_predecessors(const NormalizedIntervals& ivs) {
  const int n = ivs.n;
  IntervalPredecessors pred;
  pred.prev.assign(n + 1, 0);
  pred.far.assign(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    pred.prev[i] = i - 1;
    // Right endpoints ascend with the label, so binary-search the largest h
    // with r(h) < l(i); h = 0 always qualifies (sentinel r = 0).
    int lo = 0, hi = i - 1;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (ivs.right[mid] < ivs.left[i]) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    pred.far[i] = lo;
  }
  return pred;
}

IntervalLabelSpace interval_label_space(const Instance& inst) {
  if (inst.kind != ModelKind::Interval) {
    throw ClassMismatchError(
        std::string("interval solver requires an interval instance, got '") +
        to_string(inst.kind) + "'");
  }
  validate_instance(inst);
  IntervalLabelSpace space;
  space.normalized = validate_interval_model(std::get<IntervalModel>(inst.model));
  space.in_s.assign(inst.n + 1, 0);
  space.weights.assign(inst.n + 1, 0);
  for (int label = 1; label <= inst.n; ++label) {
    const int v = space.normalized.label_to_vertex[label];
    space.in_s[label] = inst.in_s[v];
    space.weights[label] = inst.weights[v];
  }
  return space;
}

int IntervalDp::context_at(int x, int y) const {
  return context_id_[static_cast<std::size_t>(x) * (n_ + 1) + y];
}

void IntervalDp::order_by_left(int& u, int& v) const {
  if (l_[u] > l_[v]) std::swap(u, v);
}

Weight IntervalDp::c_run_value(int ctx, int layer) const {
  const Context& c = contexts_[ctx];
  internal_check(layer >= c.base && layer <= c.top,
                 "C value read outside its stored run");
  return c_vals_[c.offset + (layer - c.base)];
}

IntervalDp::Tag IntervalDp::c_run_tag(int ctx, int layer) const {
  const Context& c = contexts_[ctx];
  internal_check(layer >= c.base && layer <= c.top,
                 "C tag read outside its stored run");
  return c_tags_[c.offset + (layer - c.base)];
}

IntervalDp::IntervalDp(const IntervalLabelSpace& space)
    : n_(space.normalized.n),
      l_(space.normalized.left),
      r_(space.normalized.right),
      s_(space.in_s),
      w_(space.weights),
      pred_(interval_predecessors(space.normalized)) {
  const std::size_t square = static_cast<std::size_t>(n_ + 1) * (n_ + 1);
  a_w_.assign(n_ + 1, 0);
  a_tag_.assign(n_ + 1, kABase);
  b_w_.assign(square, 0);
  b_tag_.assign(square, kBFromA);
  context_id_.assign(square, -1);

  // Register every edge context of two non-terminals.  The stored run of
  // context (x, y) is [base, top]: top = min(x,y) - 1 is the only layer read
  // by B or by mutation, and below it only chains of labels still meeting y
  // keep reading downward, so the run ends at the first label that does not.
  std::size_t total = 0;
  for (int u = 1; u <= n_; ++u) {
    if (s_[u]) continue;
    for (int v = u + 1; v <= n_; ++v) {
      if (s_[v] || !adjacent(u, v)) continue;
      Context ctx;
      ctx.x = u;
      ctx.y = v;
      order_by_left(ctx.x, ctx.y);
      ctx.top = u - 1;
      int j = ctx.top;
      while (j >= 1 && adjacent(j, ctx.y)) --j;
      ctx.base = j;
      ctx.offset = total;
      total += static_cast<std::size_t>(ctx.top - ctx.base + 1);
      context_id_[static_cast<std::size_t>(ctx.x) * (n_ + 1) + ctx.y] =
          static_cast<int>(contexts_.size());
      contexts_.push_back(ctx);
    }
  }
  c_vals_.assign(total, 0);
  c_tags_.assign(total, kCCollapse);

  std::vector<std::vector<int>> activate(n_ + 1);
  for (std::size_t id = 0; id < contexts_.size(); ++id) {
    activate[contexts_[id].base].push_back(static_cast<int>(id));
  }
  std::vector<int> active;

  for (int i = 0; i <= n_; ++i) {
    // A(i) = max(A(i-1), B(i-1, i) + i); ties keep the first alternative.
    if (i > 0) {
      const Weight skip = a_w_[i - 1];
      const Weight take = b_w_[bi(i - 1, i)] + w_[i];
      if (take > skip) {
        a_w_[i] = take;
        a_tag_[i] = kATake;
      } else {
        a_w_[i] = skip;
        a_tag_[i] = kASkip;
      }
    }

    // B(i, x) for x > i.
    for (int x = i + 1; x <= n_; ++x) {
      const std::size_t at = bi(i, x);
      if (i == 0 || !adjacent(i, x)) {
        b_w_[at] = a_w_[i];
        b_tag_[at] = kBFromA;
        continue;
      }
      int xs = i, ys = x;
      order_by_left(xs, ys);
      const Weight skip = b_w_[bi(i - 1, x)];
      Weight take;
      Tag take_tag;
      if (s_[i] || s_[x]) {
        // Adding i next to a terminal pair closes any triangle with both, so
        // the rest of the solution must clear the l-later interval entirely.
        take = b_w_[bi(pred_.far[ys], xs)] + w_[i];
        take_tag = kBJump;
      } else {
        const int ctx = context_at(xs, ys);
        internal_check(ctx >= 0, "B recurrence: missing C context");
        take = c_run_value(ctx, i - 1) + w_[i];
        take_tag = kBViaC;
      }
      if (take > skip) {
        b_w_[at] = take;
        b_tag_[at] = take_tag;
      } else {
        b_w_[at] = skip;
        b_tag_[at] = kBSkip;
      }
    }

    // C layer i for every context whose run covers i.
    for (int id : activate[i]) active.push_back(id);
    for (std::size_t k = 0; k < active.size();) {
      const int id = active[k];
      const Context& ctx = contexts_[id];
      if (ctx.top < i) {
        active[k] = active.back();
        active.pop_back();
        continue;
      }
      const std::size_t off = ctx.offset + static_cast<std::size_t>(i - ctx.base);
      if (i == ctx.base) {
        // First stored layer: label i does not meet y (or is the sentinel),
        // so the pair context reduces to the single-vertex context x.
        c_vals_[off] = b_w_[bi(i, ctx.x)];
        c_tags_[off] = kCCollapse;
      } else {
        const Weight same = c_vals_[off - 1];
        if (s_[i]) {
          c_vals_[off] = same;
          c_tags_[off] = kCDescend;
        } else {
          int xx = ctx.x, yy = ctx.y;
          if (l_[i] < l_[ctx.y]) {  // otherwise i is l-largest: context unchanged
            yy = l_[i] < l_[ctx.x] ? ctx.x : i;
            xx = l_[i] < l_[ctx.x] ? i : ctx.x;
          }
          Weight take;
          if (xx == ctx.x && yy == ctx.y) {
            take = same + w_[i];
          } else {
            const int mid = context_at(xx, yy);
            internal_check(mid >= 0, "C recurrence: missing mutated context");
            take = c_run_value(mid, i - 1) + w_[i];
          }
          if (take > same) {
            c_vals_[off] = take;
            c_tags_[off] = kCTake;
          } else {
            c_vals_[off] = same;
            c_tags_[off] = kCSkip;
          }
        }
      }
      ++k;
    }
  }
}

Weight IntervalDp::a_value(int i) const {
  internal_check(i >= 0 && i <= n_, "A value index out of range");
  return a_w_[i];
}

Weight IntervalDp::b_value(int i, int x) const {
  internal_check(i >= 0 && i < x && x <= n_, "B value index out of range");
  return b_w_[bi(i, x)];
}

std::optional<Weight> IntervalDp::c_value(int i, int x, int y) const {
  if (x < 1 || y < 1 || x > n_ || y > n_ || x == y) return std::nullopt;
  int xs = x, ys = y;
  order_by_left(xs, ys);
  const int ctx = context_at(xs, ys);
  if (ctx < 0) return std::nullopt;
  const Context& c = contexts_[ctx];
  if (i < c.base || i > c.top) return std::nullopt;
  return c_vals_[c.offset + (i - c.base)];
}

std::vector<int> IntervalDp::walk_from(int start_kind, int i, int x, int y) const {
  // 0 = A state, 1 = B state, 2 = C state.
  std::vector<int> out;
  int kind = start_kind, ci = i, cx = x, cy = y;
  int steps = 0;
  while (true) {
    internal_check(++steps <= 3 * (n_ + 2),
                   "interval traceback does not terminate");
    if (kind == 0) {
      switch (a_tag_[ci]) {
        case kABase:
          std::sort(out.begin(), out.end());
          return out;
        case kASkip:
          --ci;
          break;
        case kATake:
          out.push_back(ci);
          kind = 1;
          cx = ci;
          --ci;
          break;
        default:
          throw InternalError("invalid A tag");
      }
    } else if (kind == 1) {
      switch (b_tag_[bi(ci, cx)]) {
        case kBFromA:
          kind = 0;
          break;
        case kBSkip:
          --ci;
          break;
        case kBJump: {
          int xs = ci, ys = cx;
          order_by_left(xs, ys);
          out.push_back(ci);
          cx = xs;
          ci = pred_.far[ys];
          break;
        }
        case kBViaC: {
          int xs = ci, ys = cx;
          order_by_left(xs, ys);
          out.push_back(ci);
          kind = 2;
          cx = xs;
          cy = ys;
          --ci;
          break;
        }
        default:
          throw InternalError("invalid B tag");
      }
    } else {
      const int ctx = context_at(cx, cy);
      internal_check(ctx >= 0, "traceback: missing C context");
      switch (c_run_tag(ctx, ci)) {
        case kCCollapse:
          kind = 1;
          cx = contexts_[ctx].x;
          break;
        case kCDescend:
        case kCSkip:
          --ci;
          break;
        case kCTake: {
          out.push_back(ci);
          int xx = contexts_[ctx].x, yy = contexts_[ctx].y;
          if (l_[ci] < l_[yy]) {
            const int ox = xx;
            xx = l_[ci] < l_[ox] ? ci : ox;
            yy = l_[ci] < l_[ox] ? ox : ci;
          }
          cx = xx;
          cy = yy;
          --ci;
          break;
        }
        default:
          throw InternalError("invalid C tag");
      }
    }
  }
}

std::vector<int> IntervalDp::trace_a(int i) const {
  internal_check(i >= 0 && i <= n_, "trace_a index out of range");
  return walk_from(0, i, 0, 0);
}

std::vector<int> IntervalDp::trace_b(int i, int x) const {
  internal_check(i >= 0 && i < x && x <= n_, "trace_b index out of range");
  return walk_from(1, i, x, 0);
}

std::vector<int> IntervalDp::trace_c(int i, int x, int y) const {
  int xs = x, ys = y;
  order_by_left(xs, ys);
  const int ctx = context_at(xs, ys);
  internal_check(ctx >= 0, "trace_c: no such context");
  internal_check(i >= contexts_[ctx].base && i <= contexts_[ctx].top,
                 "trace_c: layer outside stored run");
  return walk_from(2, i, xs, ys);
}

std::vector<std::array<int, 3>> IntervalDp::stored_c_states() const {
  std::vector<std::array<int, 3>> out;
  for (const Context& ctx : contexts_) {
    for (int layer = ctx.base; layer <= ctx.top; ++layer) {
      out.push_back({layer, ctx.x, ctx.y});
    }
  }
  return out;
}

Solution solve_interval(const Instance& inst) {
  const IntervalLabelSpace space = interval_label_space(inst);
  const IntervalDp dp(space);
  const std::vector<int> labels = dp.trace_a(space.normalized.n);
  std::vector<char> retained(inst.n + 1, 0);
  for (int label : labels) {
    retained[space.normalized.label_to_vertex[label]] = 1;
  }
  Solution sol = make_solution(inst, retained, "interval");
  verify_solution(inst, build_adjacency(inst), sol);
  return sol;
}

}  // namespace sfvs
