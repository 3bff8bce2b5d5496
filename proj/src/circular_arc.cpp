#include "sfvs/circular_arc.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sfvs/interval.hpp"

namespace sfvs {

namespace {

// True iff arc (from, to) of ranked points covers point p (all clockwise).
bool arc_contains(int from, int to, int p) {
  if (from <= to) return from <= p && p <= to;
  return p >= from || p <= to;
}

bool arc_has_point(const NormalizedArcs& arcs, int v, int p) {
  return arc_contains(arcs.from[v], arcs.to[v], p);
}

// An arc crosses gap g when it covers the whole open stretch between ranked
// points g and g+1: it must cover both bounding points without ending at g
// (an arc stops covering the circle right after its clockwise end).
bool arc_crosses_gap(const NormalizedArcs& arcs, int v, int gap) {
  const int points = 2 * arcs.n;
  const int next = gap % points + 1;
  return arc_has_point(arcs, v, gap) && arc_has_point(arcs, v, next) &&
         arcs.to[v] != gap;
}

std::vector<int> sorted_difference(const std::vector<int>& a,
                                   const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// One connected component restated with its own vertex ids 1..k.
struct LocalComponent {
  int k = 0;
  std::vector<int> orig;  // local -> original id; [0] = 0
  CircularArcModel model;
  std::vector<Weight> weights;  // by local id
  std::vector<char> in_s;       // by local id
  Graph graph;                  // local adjacency
};

// Interval-solving one shrunken model: which local arcs were kept in the
// model, where it was opened, and what the interval solver retained.
struct CutSolve {
  std::vector<int> retained;                       // local ids, ascending
  std::vector<std::pair<int, int>> dropped;        // local ids, u < v
  int cut_gap = 0;  // gap index in the shrunken model's own ranking
};

// Builds the arc model on `keep` (ascending local ids), opens the circle at
// `gap` of that model's own ranking (gap <= 0: the first uncovered gap, which
// must then exist), and interval-solves the result.
CutSolve cut_and_solve(const LocalComponent& comp, const std::vector<int>& keep,
                       int gap) {
  CutSolve out;
  const int k = static_cast<int>(keep.size());
  if (k == 0) return out;
  CircularArcModel sub;
  sub.ends.reserve(keep.size());
  for (int v : keep) sub.ends.push_back(comp.model.ends[v - 1]);
  const NormalizedArcs arcs = validate_circular_arc_model(sub);
  if (gap <= 0) {
    const ArcCoverage cov = arc_coverage(arcs);
    internal_check(!cov.uncovered_gaps.empty(),
                   "expected an uncovered gap after removing crossing arcs");
    gap = cov.uncovered_gaps.front();
  }
  out.cut_gap = gap;
  const CutResult cut = cut_to_interval_model(arcs, gap);

  Instance sub_inst;
  sub_inst.kind = ModelKind::Interval;
  sub_inst.n = k;
  sub_inst.model = cut.intervals;
  sub_inst.weights.assign(static_cast<std::size_t>(k) + 1, 0);
  sub_inst.in_s.assign(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 1; i <= k; ++i) {
    sub_inst.weights[i] = comp.weights[keep[i - 1]];
    sub_inst.in_s[i] = comp.in_s[keep[i - 1]];
  }
  const Solution sol = solve_interval(sub_inst);
  out.retained.reserve(sol.retained.size());
  for (int r : sol.retained) out.retained.push_back(keep[r - 1]);
  out.dropped.reserve(cut.dropped_edges.size());
  for (const auto& [u, v] : cut.dropped_edges) {
    out.dropped.emplace_back(keep[u - 1], keep[v - 1]);
  }
  return out;
}

class ComponentSolver {
 public:
  ComponentSolver(const LocalComponent& comp,
                  std::vector<CutCandidateTrace>* traces)
      : comp_(comp), traces_(traces) {}

  std::vector<int> run() {
    const NormalizedArcs arcs = validate_circular_arc_model(comp_.model);
    const ArcCoverage cov = arc_coverage(arcs);
    std::vector<int> all(comp_.k);
    std::iota(all.begin(), all.end(), 1);

    if (!cov.uncovered_gaps.empty()) {
      // Nothing crosses this gap, so opening the circle there keeps the
      // intersection graph intact and the interval solver is exact.
      const CutSolve r =
          cut_and_solve(comp_, all, cov.uncovered_gaps.front());
      internal_check(r.dropped.empty(), "an uncovered cut severed an edge");
      consider("interval", r.cut_gap, {}, r.dropped, {}, r.retained);
      internal_check(best_weight_ >= 0, "interval shortcut candidate invalid");
      return best_;
    }

    // Per gap: drop exactly the arcs crossing it; the stretch is then bare,
    // so the remainder opens cleanly.
    for (int gap = 1; gap <= 2 * comp_.k; ++gap) {
      const std::vector<int>& crossing = cov.gap_cover[gap];
      const CutSolve r =
          cut_and_solve(comp_, sorted_difference(all, crossing), 0);
      consider("gap-clique", r.cut_gap, crossing, r.dropped, {}, r.retained);
    }
    // Per point: drop the whole clique of arcs through it.
    for (int p = 1; p <= 2 * comp_.k; ++p) {
      const std::vector<int>& clique = cov.point_cover[p];
      const CutSolve r = cut_and_solve(comp_, sorted_difference(all, clique), 0);
      consider("point-clique", r.cut_gap, clique, r.dropped, {}, r.retained);
    }

    // Shed the non-terminal vertices with no terminal neighbor, solve the
    // remainder, and put them back afterwards.
    std::vector<int> shed;
    for (int v = 1; v <= comp_.k; ++v) {
      if (comp_.in_s[v]) continue;
      bool has_s_neighbor = false;
      for (int u = 1; u <= comp_.k && !has_s_neighbor; ++u) {
        if (comp_.in_s[u] && comp_.graph.adjacent(v, u)) has_s_neighbor = true;
      }
      if (!has_s_neighbor) shed.push_back(v);
    }
    const std::vector<int> reduced = sorted_difference(all, shed);
    if (reduced.empty()) {
      consider("ns-interval", 0, shed, {}, shed, shed);
    } else {
      CircularArcModel reduced_model;
      reduced_model.ends.reserve(reduced.size());
      for (int v : reduced) reduced_model.ends.push_back(comp_.model.ends[v - 1]);
      const NormalizedArcs red_arcs = validate_circular_arc_model(reduced_model);
      const ArcCoverage red_cov = arc_coverage(red_arcs);
      if (!red_cov.uncovered_gaps.empty()) {
        const CutSolve r =
            cut_and_solve(comp_, reduced, red_cov.uncovered_gaps.front());
        internal_check(r.dropped.empty(), "an uncovered cut severed an edge");
        consider("ns-interval", r.cut_gap, shed, r.dropped, shed,
                 sorted_union(r.retained, shed));
      } else {
        for (int gap = 1; gap <= 2 * static_cast<int>(reduced.size()); ++gap) {
          const std::vector<int>& crossing = red_cov.gap_cover[gap];
          if (crossing.size() > 2) continue;
          const CutSolve r = cut_and_solve(comp_, reduced, gap);
          consider("ns-cut", gap, shed, r.dropped, shed,
                   sorted_union(r.retained, shed));
          if (crossing.size() == 2) {
            const std::vector<int> pair{reduced[crossing[0] - 1],
                                        reduced[crossing[1] - 1]};
            const std::vector<int> forced = sorted_union(shed, pair);
            consider("ns-cut-forced", gap, shed, r.dropped, forced,
                     sorted_union(r.retained, forced));
          }
        }
      }
    }

    // Open the unreduced circle wherever at most two arcs span the cut.
    for (int gap = 1; gap <= 2 * comp_.k; ++gap) {
      const std::vector<int>& crossing = cov.gap_cover[gap];
      if (crossing.size() > 2) continue;
      const CutSolve r = cut_and_solve(comp_, all, gap);
      consider("cut", gap, {}, r.dropped, {}, r.retained);
      if (crossing.size() == 2) {
        consider("cut-forced", gap, {}, r.dropped, crossing,
                 sorted_union(r.retained, crossing));
      }
    }

    // Retaining no terminal at all is always allowed; this candidate is the
    // best one that does so, and it is the only shape a solution can take
    // when the retained arcs wrap the whole circle without any terminal.
    {
      std::vector<int> non_terminals;
      for (int v = 1; v <= comp_.k; ++v) {
        if (!comp_.in_s[v]) non_terminals.push_back(v);
      }
      consider("terminal-free", 0, {}, {}, {}, non_terminals);
    }

    // A solution wrapping the circle while retaining terminal t keeps at
    // most one other arc across any gap that t spans (three mutually
    // crossing arcs form a triangle through t).  Guess t alone, or t plus
    // one companion, across one of the gaps flanking t's arc; drop the
    // other arcs crossing it and open the circle there.  In the solo guess
    // nothing else can even touch t's clockwise end point any more, so the
    // cut severs no edge and the interval solve is exact on what remains.
    for (int t = 1; t <= comp_.k; ++t) {
      if (!comp_.in_s[t]) continue;
      const int points = 2 * comp_.k;
      const int gap_at_start = arcs.from[t];
      const int gap_at_end = (arcs.to[t] - 2 + points) % points + 1;
      const long long start_value = comp_.model.ends[t - 1].first;
      const long long end_value = comp_.model.ends[t - 1].second;
      {
        std::vector<int> removed;
        for (int v : cov.gap_cover[gap_at_end]) {
          if (v != t) removed.push_back(v);
        }
        const std::vector<int> keep = sorted_difference(all, removed);
        const int gap = reduced_gap_index(keep, end_value, true);
        const CutSolve r = cut_and_solve(comp_, keep, gap);
        internal_check(r.dropped.empty(),
                       "a solo terminal crossing guess severed an edge");
        consider("terminal-gap", gap, removed, r.dropped, {}, r.retained);
      }
      for (const int comp_gap : {gap_at_start, gap_at_end}) {
        const long long anchor =
            comp_gap == gap_at_start ? start_value : end_value;
        const bool gap_ends_at_anchor = comp_gap == gap_at_end;
        for (int companion : cov.gap_cover[comp_gap]) {
          if (companion == t) continue;
          std::vector<int> removed;
          for (int v : cov.gap_cover[comp_gap]) {
            if (v != t && v != companion) removed.push_back(v);
          }
          const std::vector<int> keep = sorted_difference(all, removed);
          const int gap = reduced_gap_index(keep, anchor, gap_ends_at_anchor);
          const CutSolve r = cut_and_solve(comp_, keep, gap);
          consider("terminal-gap-pair", gap, removed, r.dropped, {},
                   r.retained);
        }
      }
    }

    internal_check(best_weight_ >= 0, "no valid candidate for the component");
    return best_;
  }

 private:
  // Validates one candidate retained set (local ids, ascending, duplicate
  // free) against the component graph, records its trace, and keeps the
  // heaviest valid one; ties go to the earlier candidate.
  void consider(const char* family, int cut_gap,
                const std::vector<int>& removed_before,
                const std::vector<std::pair<int, int>>& dropped,
                const std::vector<int>& forced,
                const std::vector<int>& candidate) {
    std::vector<char> mask(static_cast<std::size_t>(comp_.k) + 1, 0);
    for (int v : candidate) mask[v] = 1;
    const bool valid = is_s_forest(comp_.graph, comp_.in_s, mask);
    Weight weight = 0;
    for (int v : candidate) weight += comp_.weights[v];
    if (traces_ != nullptr) {
      CutCandidateTrace trace;
      trace.family = family;
      trace.cut_gap = cut_gap;
      trace.removed_before_cut = to_original(removed_before);
      trace.dropped_edges.reserve(dropped.size());
      for (const auto& [u, v] : dropped) {
        trace.dropped_edges.emplace_back(comp_.orig[u], comp_.orig[v]);
      }
      trace.forced_retained = to_original(forced);
      trace.retained = to_original(candidate);
      trace.valid = valid;
      trace.retained_weight = weight;
      traces_->push_back(std::move(trace));
    }
    if (valid && weight > best_weight_) {
      best_weight_ = weight;
      best_ = candidate;
    }
  }

  std::vector<int> to_original(const std::vector<int>& locals) const {
    std::vector<int> out;
    out.reserve(locals.size());
    for (int v : locals) out.push_back(comp_.orig[v]);
    return out;
  }

  // Gap index, in the ranking of the model shrunk to `keep`, of the gap
  // whose clockwise end (or start, for gap_ends_at_anchor == false) is the
  // point with this endpoint value.  The anchor must belong to a kept arc.
  int reduced_gap_index(const std::vector<int>& keep, long long anchor,
                        bool gap_ends_at_anchor) const {
    std::vector<long long> values;
    values.reserve(2 * keep.size());
    for (int v : keep) {
      values.push_back(comp_.model.ends[v - 1].first);
      values.push_back(comp_.model.ends[v - 1].second);
    }
    std::sort(values.begin(), values.end());
    const auto it = std::lower_bound(values.begin(), values.end(), anchor);
    internal_check(it != values.end() && *it == anchor,
                   "gap anchor endpoint is not part of the shrunken model");
    const int points = static_cast<int>(values.size());
    const int rank = static_cast<int>(it - values.begin()) + 1;
    if (!gap_ends_at_anchor) return rank;
    return rank == 1 ? points : rank - 1;
  }

  const LocalComponent& comp_;
  std::vector<CutCandidateTrace>* traces_ = nullptr;
  Weight best_weight_ = -1;
  std::vector<int> best_;
};

}  // namespace

ArcCoverage arc_coverage(const NormalizedArcs& arcs) {
  const int points = 2 * arcs.n;
  ArcCoverage out;
  out.point_cover.assign(static_cast<std::size_t>(points) + 1, {});
  out.gap_cover.assign(static_cast<std::size_t>(points) + 1, {});
  for (int p = 1; p <= points; ++p) {
    for (int v = 1; v <= arcs.n; ++v) {
      if (arc_has_point(arcs, v, p)) out.point_cover[p].push_back(v);
      if (arc_crosses_gap(arcs, v, p)) out.gap_cover[p].push_back(v);
    }
    if (out.gap_cover[p].empty()) out.uncovered_gaps.push_back(p);
  }
  return out;
}

CutResult cut_to_interval_model(const NormalizedArcs& arcs, int cut_gap) {
  const int points = 2 * arcs.n;
  if (cut_gap < 1 || cut_gap > points) {
    throw ValidationError("cut gap " + std::to_string(cut_gap) +
                          " out of range 1.." + std::to_string(points));
  }
  std::vector<int> crossing;
  for (int v = 1; v <= arcs.n; ++v) {
    if (arc_crosses_gap(arcs, v, cut_gap)) crossing.push_back(v);
  }
  if (crossing.size() > 2) {
    throw ValidationError("cannot open the circle inside gap " +
                          std::to_string(cut_gap) + ": " +
                          std::to_string(crossing.size()) +
                          " arcs cross it");
  }

  // Rotated rank: the first point clockwise of the gap becomes 1 and the
  // point closing the gap becomes 2n on the opened line.
  const auto pos = [&](int q) {
    return (q - cut_gap - 1 + points) % points + 1;
  };
  // Doubling the rotated ranks leaves odd coordinates free for the two
  // truncated stubs, keeping all interval endpoints distinct.
  int keeps_left_side = 0;   // crosser keeping its stretch up to the cut
  int keeps_right_side = 0;  // crosser keeping its stretch after the cut
  if (crossing.size() == 1) {
    keeps_left_side = crossing[0];
  } else if (crossing.size() == 2) {
    if (pos(arcs.from[crossing[0]]) < pos(arcs.from[crossing[1]])) {
      keeps_left_side = crossing[0];
      keeps_right_side = crossing[1];
    } else {
      keeps_left_side = crossing[1];
      keeps_right_side = crossing[0];
    }
  }

  CutResult out;
  out.intervals.ends.assign(arcs.n, {0, 0});
  for (int v = 1; v <= arcs.n; ++v) {
    long long left, right;
    if (v == keeps_left_side) {
      left = 2LL * pos(arcs.from[v]);
      right = 2LL * points + 1;
    } else if (v == keeps_right_side) {
      left = 1;
      right = 2LL * pos(arcs.to[v]);
    } else {
      left = 2LL * pos(arcs.from[v]);
      right = 2LL * pos(arcs.to[v]);
      internal_check(left < right, "an arc clear of the cut must stay intact");
    }
    out.intervals.ends[v - 1] = {left, right};
  }

  for (int u = 1; u <= arcs.n; ++u) {
    for (int v = u + 1; v <= arcs.n; ++v) {
      const bool arc_adj = arc_has_point(arcs, u, arcs.from[v]) ||
                           arc_has_point(arcs, v, arcs.from[u]);
      const auto& [lu, ru] = out.intervals.ends[u - 1];
      const auto& [lv, rv] = out.intervals.ends[v - 1];
      const bool interval_adj = lu < rv && lv < ru;
      internal_check(arc_adj || !interval_adj,
                     "opening the circle must never create an edge");
      if (arc_adj && !interval_adj) out.dropped_edges.emplace_back(u, v);
    }
  }
  return out;
}

Solution solve_circular_arc(const Instance& inst,
                            std::vector<CutCandidateTrace>* traces) {
  if (inst.kind != ModelKind::CircularArc) {
    throw ClassMismatchError(
        std::string("circular-arc solver requires a circular-arc instance, "
                    "got '") +
        to_string(inst.kind) + "'");
  }
  validate_instance(inst);
  const Graph g = build_adjacency(inst);
  int component_count = 0;
  const std::vector<int> component = connected_components(g, component_count);
  const auto& model = std::get<CircularArcModel>(inst.model);

  std::vector<char> retained(static_cast<std::size_t>(inst.n) + 1, 0);
  for (int c = 0; c < component_count; ++c) {
    LocalComponent comp;
    comp.orig.push_back(0);
    for (int v = 1; v <= inst.n; ++v) {
      if (component[v] == c) comp.orig.push_back(v);
    }
    comp.k = static_cast<int>(comp.orig.size()) - 1;
    comp.model.ends.reserve(comp.k);
    comp.weights.assign(static_cast<std::size_t>(comp.k) + 1, 0);
    comp.in_s.assign(static_cast<std::size_t>(comp.k) + 1, 0);
    for (int v = 1; v <= comp.k; ++v) {
      comp.model.ends.push_back(model.ends[comp.orig[v] - 1]);
      comp.weights[v] = inst.weights[comp.orig[v]];
      comp.in_s[v] = inst.in_s[comp.orig[v]];
    }
    Instance local_inst;
    local_inst.kind = ModelKind::CircularArc;
    local_inst.n = comp.k;
    local_inst.model = comp.model;
    local_inst.weights = comp.weights;
    local_inst.in_s = comp.in_s;
    comp.graph = build_adjacency(local_inst);

    ComponentSolver solver(comp, traces);
    for (int v : solver.run()) retained[comp.orig[v]] = 1;
  }

  Solution sol = make_solution(inst, retained, "circular-arc");
  verify_solution(inst, g, sol);
  return sol;
}

}  // namespace sfvs
