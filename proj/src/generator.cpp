#include "sfvs/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sfvs {

namespace {
constexpr std::uint64_t kZeroSeedReplacement = 0x9E3779B97F4A7C15ull;
}

Rng::Rng(std::uint64_t seed)
    : state_(seed == 0 ? kZeroSeedReplacement : seed) {}

std::uint64_t Rng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 2685821657736338717ull;
}

std::uint64_t Rng::next_below(std::uint64_t k) {
  internal_check(k >= 1, "next_below requires k >= 1");
  return next() % k;
}

bool Rng::next_bernoulli(double p) {
  const double clamped = std::min(1.0, std::max(0.0, p));
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(std::llround(clamped * 4294967296.0));
  return (next() >> 32) < threshold;
}

namespace {

void fisher_yates(std::vector<int>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<int> shuffled_range(int count, Rng& rng) {
  std::vector<int> values(count);
  std::iota(values.begin(), values.end(), 1);
  fisher_yates(values, rng);
  return values;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
  if (params.n < 0) throw ValidationError("generator: n must be non-negative");
  if (params.max_weight < 0) {
    throw ValidationError("generator: max weight must be non-negative");
  }
  const int n = params.n;
  Rng rng(params.seed);

  Instance inst;
  inst.kind = params.kind;
  inst.n = n;

  switch (params.kind) {
    case ModelKind::Interval: {
      const std::vector<int> values = shuffled_range(2 * n, rng);
      IntervalModel m;
      for (int i = 0; i < n; ++i) {
        const int a = values[2 * i];
        const int b = values[2 * i + 1];
        m.ends.emplace_back(std::min(a, b), std::max(a, b));
      }
      inst.model = std::move(m);
      break;
    }
    case ModelKind::CircularArc: {
      const std::vector<int> values = shuffled_range(2 * n, rng);
      CircularArcModel m;
      for (int i = 0; i < n; ++i) {
        m.ends.emplace_back(values[2 * i], values[2 * i + 1]);
      }
      inst.model = std::move(m);
      break;
    }
    case ModelKind::Permutation: {
      PermutationModel m;
      m.pi = shuffled_range(n, rng);
      inst.model = std::move(m);
      break;
    }
    case ModelKind::Cobipartite: {
      std::vector<char> side_b(n + 1, 0);
      for (int v = 1; v <= n; ++v) side_b[v] = rng.next_below(2) == 1;
      EdgeListModel m;
      std::vector<int> part_a;
      for (int v = 1; v <= n; ++v) {
        if (!side_b[v]) part_a.push_back(v);
      }
      for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
          if (side_b[u] == side_b[v]) {
            m.edges.emplace_back(u, v);
          } else if (rng.next_below(2) == 1) {
            m.edges.emplace_back(u, v);
          }
        }
      }
      m.part_a = std::move(part_a);
      inst.model = std::move(m);
      break;
    }
    case ModelKind::Generic:
      throw ValidationError("generator: kind 'generic' is not generated");
  }

  inst.in_s.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    inst.in_s[v] = rng.next_bernoulli(params.s_fraction) ? 1 : 0;
  }
  inst.weights.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    inst.weights[v] =
        static_cast<Weight>(rng.next_below(
            static_cast<std::uint64_t>(params.max_weight) + 1));
  }
  validate_instance(inst);
  return inst;
}

}  // namespace sfvs
