#pragma once

#include <string>

#include "sfvs/core.hpp"

namespace sfvs {

// Which solver to run on an instance.
enum class Algo {
  Auto,         // pick by model kind (generic -> oracle)
  Interval,     // interval model required
  CircularArc,  // circular-arc model required
  Permutation,  // permutation model required
  Cobipartite,  // any kind whose graph is co-bipartite
  Oracle,       // any kind, exhaustive, n <= 20
};

std::string to_string(Algo algo);

// Case-insensitive; accepts the names printed by to_string.
// Throws ValidationError on an unknown name.
Algo parse_algo(const std::string& text);

// Runs the selected solver and re-verifies the returned solution against the
// instance graph. Interval/CircularArc/Permutation demand a matching model
// kind and Oracle demands n <= 20 (ClassMismatchError otherwise); Cobipartite
// demands a co-bipartite graph (ValidationError from the partition step).
Solution solve(const Instance& inst, Algo algo = Algo::Auto);

}  // namespace sfvs
