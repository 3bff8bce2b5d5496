#include "sfvs/solve.hpp"

#include <cctype>

#include "sfvs/circular_arc.hpp"
#include "sfvs/cobipartite.hpp"
#include "sfvs/interval.hpp"
#include "sfvs/oracle.hpp"
#include "sfvs/permutation.hpp"

namespace sfvs {

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::Auto: return "auto";
    case Algo::Interval: return "interval";
    case Algo::CircularArc: return "circular-arc";
    case Algo::Permutation: return "permutation";
    case Algo::Cobipartite: return "cobipartite";
    case Algo::Oracle: return "oracle";
  }
  throw InternalError("unhandled algo value");
}

Algo parse_algo(const std::string& text) {
  std::string t;
  t.reserve(text.size());
  for (char c : text) {
    t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (t == "auto") return Algo::Auto;
  if (t == "interval") return Algo::Interval;
  if (t == "circular-arc") return Algo::CircularArc;
  if (t == "permutation") return Algo::Permutation;
  if (t == "cobipartite") return Algo::Cobipartite;
  if (t == "oracle") return Algo::Oracle;
  throw ValidationError("unknown algorithm name: " + text);
}

namespace {

Algo algo_for_kind(ModelKind kind) {
  switch (kind) {
    case ModelKind::Interval: return Algo::Interval;
    case ModelKind::CircularArc: return Algo::CircularArc;
    case ModelKind::Permutation: return Algo::Permutation;
    case ModelKind::Cobipartite: return Algo::Cobipartite;
    case ModelKind::Generic: return Algo::Oracle;
  }
  throw InternalError("unhandled model kind");
}

void require_kind(const Instance& inst, ModelKind kind, const std::string& solver) {
  if (inst.kind != kind) {
    throw ClassMismatchError("the " + solver + " solver requires a " + to_string(kind) +
                             " model, got " + to_string(inst.kind));
  }
}

}  // namespace

Solution solve(const Instance& inst, Algo algo) {
  validate_instance(inst);
  if (algo == Algo::Auto) algo = algo_for_kind(inst.kind);
  Solution sol;
  switch (algo) {
    case Algo::Auto:
      throw InternalError("auto algo not resolved");
    case Algo::Interval:
      require_kind(inst, ModelKind::Interval, "interval");
      sol = solve_interval(inst);
      break;
    case Algo::CircularArc:
      require_kind(inst, ModelKind::CircularArc, "circular-arc");
      sol = solve_circular_arc(inst);
      break;
    case Algo::Permutation:
      require_kind(inst, ModelKind::Permutation, "permutation");
      sol = solve_permutation(inst);
      break;
    case Algo::Cobipartite:
      try {
        sol = solve_cobipartite(inst);
      } catch (const ValidationError& err) {
        // The instance itself already validated, so a validation failure here
        // means the graph is not co-bipartite: a solver/class mismatch.
        throw ClassMismatchError(err.what());
      }
      break;
    case Algo::Oracle:
      sol = oracle_solve(inst);
      break;
  }
  Graph g = build_adjacency(inst);
  verify_solution(inst, g, sol);
  return sol;
}

}  // namespace sfvs
