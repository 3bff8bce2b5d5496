#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfvs/core.hpp"
#include "sfvs/generator.hpp"
#include "sfvs/io.hpp"
#include "sfvs/solve.hpp"

namespace {

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    sfvs::write_file(path, content);
  }
}

int run_solve(const std::string& input, const std::string& algo_name,
              const std::string& output) {
  sfvs::Instance inst = sfvs::parse_instance_text(sfvs::read_file(input));
  sfvs::Solution sol = sfvs::solve(inst, sfvs::parse_algo(algo_name));
  write_or_print(output, sfvs::emit_solution(sol));
  return 0;
}

int run_check(const std::string& input, const std::string& solution) {
  sfvs::Instance inst = sfvs::parse_instance_text(sfvs::read_file(input));
  sfvs::SolutionFile sol = sfvs::parse_solution_text(sfvs::read_file(solution));
  std::vector<char> retained(static_cast<std::size_t>(inst.n) + 1, 1);
  retained[0] = 0;
  sfvs::Weight removed_weight = 0;
  for (int v : sol.removed) {
    if (v < 1 || v > inst.n) {
      throw sfvs::ValidationError("solution removes vertex " + std::to_string(v) +
                                  " outside 1.." + std::to_string(inst.n));
    }
    if (!retained[static_cast<std::size_t>(v)]) {
      throw sfvs::ValidationError("solution removes vertex " + std::to_string(v) + " twice");
    }
    retained[static_cast<std::size_t>(v)] = 0;
    removed_weight += inst.weights[static_cast<std::size_t>(v)];
  }
  if (removed_weight != sol.removed_weight) {
    throw sfvs::ValidationError("solution declares removed weight " +
                                std::to_string(sol.removed_weight) +
                                " but the removed vertices weigh " +
                                std::to_string(removed_weight));
  }
  sfvs::Graph g = sfvs::build_adjacency(inst);
  if (!sfvs::is_s_forest(g, inst.in_s, retained)) {
    throw sfvs::ValidationError("removing the listed vertices still leaves a cycle "
                                "through a terminal vertex");
  }
  std::cout << "ok: removed weight " << removed_weight << ", " << sol.removed.size()
            << " vertices removed, remainder is a terminal-cycle-free forest\n";
  return 0;
}

int run_gen(const std::string& kind_name, int n, std::uint64_t seed, double s_frac,
            sfvs::Weight max_weight, const std::string& output) {
  sfvs::GenParams params;
  params.kind = sfvs::parse_model_kind(kind_name);
  params.n = n;
  params.seed = seed;
  params.s_fraction = s_frac;
  params.max_weight = max_weight;
  sfvs::Instance inst = sfvs::generate_instance(params);
  write_or_print(output, sfvs::emit_instance(inst));
  return 0;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int value = std::stoi(item, &used);
      if (used != item.size() || value < 0) throw std::invalid_argument(item);
      sizes.push_back(value);
    } catch (const std::exception&) {
      throw sfvs::ValidationError("bad size '" + item + "' in --sizes (want n1,n2,...)");
    }
  }
  if (sizes.empty()) throw sfvs::ValidationError("--sizes lists no sizes");
  return sizes;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  auto parse_one = [](const std::string& part) {
    try {
      std::size_t used = 0;
      unsigned long long value = std::stoull(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return static_cast<std::uint64_t>(value);
    } catch (const std::exception&) {
      throw sfvs::ValidationError("bad seed '" + part + "' in --seeds (want s or s1..s2)");
    }
  };
  std::size_t sep = text.find("..");
  if (sep == std::string::npos) {
    std::uint64_t s = parse_one(text);
    return {s, s};
  }
  std::uint64_t lo = parse_one(text.substr(0, sep));
  std::uint64_t hi = parse_one(text.substr(sep + 2));
  if (hi < lo) throw sfvs::ValidationError("--seeds range is empty: " + text);
  return {lo, hi};
}

int run_bench(const std::string& kind_name, const std::string& sizes_text,
              const std::string& seeds_text, const std::string& output) {
  sfvs::ModelKind kind = sfvs::parse_model_kind(kind_name);
  std::vector<int> sizes = parse_sizes(sizes_text);
  auto [seed_lo, seed_hi] = parse_seed_range(seeds_text);
  std::ostringstream csv;
  csv << "kind,n,m,seed,removed_weight,wall_millis\n";
  for (int n : sizes) {
    for (std::uint64_t seed = seed_lo;; ++seed) {
      sfvs::GenParams params;
      params.kind = kind;
      params.n = n;
      params.seed = seed;
      sfvs::Instance inst = sfvs::generate_instance(params);
      int m = sfvs::build_adjacency(inst).edge_count();
      auto start = std::chrono::steady_clock::now();
      sfvs::Solution sol = sfvs::solve(inst, sfvs::Algo::Auto);
      auto stop = std::chrono::steady_clock::now();
      double millis = std::chrono::duration<double, std::milli>(stop - start).count();
      csv << sfvs::to_string(kind) << ',' << n << ',' << m << ',' << seed << ','
          << sol.removed_weight << ',' << std::fixed << std::setprecision(3) << millis
          << '\n';
      if (seed == seed_hi) break;
    }
  }
  write_or_print(output, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver for weighted subset feedback vertex set on "
               "interval, circular-arc, permutation and co-bipartite graphs"};
  app.require_subcommand(1);

  std::string input, output, solution, algo_name = "auto", kind_name;
  std::string sizes_text, seeds_text;
  int n = 0;
  std::uint64_t seed = 1;
  double s_frac = 0.3;
  sfvs::Weight max_weight = 100;

  CLI::App* cmd_solve = app.add_subcommand("solve", "solve an instance file");
  cmd_solve->add_option("--input", input, "instance file")->required();
  cmd_solve->add_option("--algo", algo_name,
                        "auto|interval|circular-arc|permutation|cobipartite|oracle");
  cmd_solve->add_option("--output", output, "solution file (default: stdout)");

  CLI::App* cmd_check = app.add_subcommand("check", "verify a solution file");
  cmd_check->add_option("--input", input, "instance file")->required();
  cmd_check->add_option("--solution", solution, "solution file")->required();

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a random instance");
  cmd_gen->add_option("--kind", kind_name,
                      "interval|circular-arc|permutation|cobipartite")->required();
  cmd_gen->add_option("--n", n, "vertex count")->required();
  cmd_gen->add_option("--seed", seed, "generator seed")->required();
  cmd_gen->add_option("--s-frac", s_frac, "terminal-set fraction (default 0.3)");
  cmd_gen->add_option("--max-weight", max_weight, "weights drawn from 0..W (default 100)");
  cmd_gen->add_option("--output", output, "instance file")->required();

  CLI::App* cmd_bench = app.add_subcommand("bench", "time the solver on generated instances");
  cmd_bench->add_option("--kind", kind_name,
                        "interval|circular-arc|permutation|cobipartite")->required();
  cmd_bench->add_option("--sizes", sizes_text, "comma-separated instance sizes")->required();
  cmd_bench->add_option("--seeds", seeds_text, "seed or inclusive range s1..s2")->required();
  cmd_bench->add_option("--output", output, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_solve->parsed()) return run_solve(input, algo_name, output);
    if (cmd_check->parsed()) return run_check(input, solution);
    if (cmd_gen->parsed()) return run_gen(kind_name, n, seed, s_frac, max_weight, output);
    if (cmd_bench->parsed()) return run_bench(kind_name, sizes_text, seeds_text, output);
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const sfvs::ClassMismatchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sfvs::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const sfvs::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
