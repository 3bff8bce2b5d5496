#include "sfvs/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

namespace sfvs {

namespace {

struct Line {
  int number = 0;  // 1-based line number in the source text
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw ValidationError("line " + std::to_string(line.number) + ": " + what);
}

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    Line line;
    line.number = number;
    std::istringstream split(raw);
    std::string token;
    while (split >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

long long parse_int(const Line& line, const std::string& token,
                    long long lo, long long hi) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) {
    fail(line, "expected an integer, got '" + token + "'");
  }
  if (value < lo || value > hi) {
    fail(line, "value " + token + " out of range [" + std::to_string(lo) +
                   ", " + std::to_string(hi) + "]");
  }
  return value;
}

void expect_arity(const Line& line, std::size_t count) {
  if (line.tokens.size() != count + 1) {
    fail(line, "directive '" + line.tokens[0] + "' expects " +
                   std::to_string(count) + " value(s), got " +
                   std::to_string(line.tokens.size() - 1));
  }
}

}  // namespace

Instance parse_instance(std::istream& in) {
  const std::vector<Line> lines = tokenize(in);
  if (lines.empty()) throw ValidationError("empty instance file");

  const Line& kind_line = lines.front();
  if (kind_line.tokens[0] != "kind") {
    fail(kind_line, "first directive must be 'kind'");
  }
  expect_arity(kind_line, 1);
  const ModelKind kind = parse_model_kind(kind_line.tokens[1]);

  // First pass: n must be known before sizing anything else.
  int n = -1;
  for (const Line& line : lines) {
    if (line.tokens[0] != "n") continue;
    if (n >= 0) fail(line, "directive 'n' repeated");
    expect_arity(line, 1);
    n = static_cast<int>(
        parse_int(line, line.tokens[1], 0, std::numeric_limits<int>::max()));
  }
  if (n < 0) throw ValidationError("missing directive 'n'");

  Instance inst;
  inst.kind = kind;
  inst.n = n;
  inst.weights.assign(n + 1, 0);
  inst.in_s.assign(n + 1, 0);

  bool saw_weights = false;
  bool saw_s = false;
  bool saw_pi = false;
  std::vector<char> saw_model_line(n + 1, 0);
  IntervalModel interval_model;
  CircularArcModel arc_model;
  PermutationModel pi_model;
  EdgeListModel edge_model;
  interval_model.ends.resize(n);
  arc_model.ends.resize(n);

  const auto model_directive = [&](const Line& line) -> const char* {
    switch (kind) {
      case ModelKind::Interval: return "interval";
      case ModelKind::CircularArc: return "arc";
      case ModelKind::Permutation: return "pi";
      case ModelKind::Cobipartite:
      case ModelKind::Generic: return "edge";
    }
    fail(line, "unreachable");
  };
  (void)model_directive;

  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const Line& line = lines[idx];
    const std::string& head = line.tokens[0];
    if (head == "kind") {
      fail(line, "directive 'kind' repeated");
    } else if (head == "n") {
      // consumed in the first pass
    } else if (head == "weights") {
      if (saw_weights) fail(line, "directive 'weights' repeated");
      saw_weights = true;
      expect_arity(line, static_cast<std::size_t>(n));
      for (int v = 1; v <= n; ++v) {
        inst.weights[v] = parse_int(line, line.tokens[v], 0,
                                    std::numeric_limits<Weight>::max());
      }
    } else if (head == "s") {
      if (saw_s) fail(line, "directive 's' repeated");
      saw_s = true;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        const int v = static_cast<int>(parse_int(line, line.tokens[k], 1, n));
        if (inst.in_s[v]) fail(line, "terminal " + line.tokens[k] + " repeated");
        inst.in_s[v] = 1;
      }
    } else if (head == "interval" && kind == ModelKind::Interval) {
      expect_arity(line, 3);
      const int v = static_cast<int>(parse_int(line, line.tokens[1], 1, n));
      if (saw_model_line[v]) {
        fail(line, "interval for vertex " + line.tokens[1] + " repeated");
      }
      saw_model_line[v] = 1;
      interval_model.ends[v - 1] = {
          parse_int(line, line.tokens[2], std::numeric_limits<long long>::min(),
                    std::numeric_limits<long long>::max()),
          parse_int(line, line.tokens[3], std::numeric_limits<long long>::min(),
                    std::numeric_limits<long long>::max())};
    } else if (head == "arc" && kind == ModelKind::CircularArc) {
      expect_arity(line, 3);
      const int v = static_cast<int>(parse_int(line, line.tokens[1], 1, n));
      if (saw_model_line[v]) {
        fail(line, "arc for vertex " + line.tokens[1] + " repeated");
      }
      saw_model_line[v] = 1;
      arc_model.ends[v - 1] = {
          parse_int(line, line.tokens[2], std::numeric_limits<long long>::min(),
                    std::numeric_limits<long long>::max()),
          parse_int(line, line.tokens[3], std::numeric_limits<long long>::min(),
                    std::numeric_limits<long long>::max())};
    } else if (head == "pi" && kind == ModelKind::Permutation) {
      if (saw_pi) fail(line, "directive 'pi' repeated");
      saw_pi = true;
      expect_arity(line, static_cast<std::size_t>(n));
      for (int i = 1; i <= n; ++i) {
        pi_model.pi.push_back(
            static_cast<int>(parse_int(line, line.tokens[i], 1, n)));
      }
    } else if (head == "edge" && (kind == ModelKind::Cobipartite ||
                                  kind == ModelKind::Generic)) {
      expect_arity(line, 2);
      const int u = static_cast<int>(parse_int(line, line.tokens[1], 1, n));
      const int v = static_cast<int>(parse_int(line, line.tokens[2], 1, n));
      if (u == v) fail(line, "self-loop at vertex " + line.tokens[1]);
      edge_model.edges.emplace_back(u, v);
    } else if (head == "partA" && (kind == ModelKind::Cobipartite ||
                                   kind == ModelKind::Generic)) {
      if (edge_model.part_a) fail(line, "directive 'partA' repeated");
      std::vector<int> part;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        part.push_back(static_cast<int>(parse_int(line, line.tokens[k], 1, n)));
      }
      edge_model.part_a = std::move(part);
    } else {
      fail(line, "directive '" + head + "' not valid for kind '" +
                     std::string(to_string(kind)) + "'");
    }
  }

  if (!saw_weights) throw ValidationError("missing directive 'weights'");
  if (!saw_s) throw ValidationError("missing directive 's'");
  switch (kind) {
    case ModelKind::Interval:
      for (int v = 1; v <= n; ++v) {
        if (!saw_model_line[v]) {
          throw ValidationError("missing interval for vertex " +
                                std::to_string(v));
        }
      }
      inst.model = std::move(interval_model);
      break;
    case ModelKind::CircularArc:
      for (int v = 1; v <= n; ++v) {
        if (!saw_model_line[v]) {
          throw ValidationError("missing arc for vertex " + std::to_string(v));
        }
      }
      inst.model = std::move(arc_model);
      break;
    case ModelKind::Permutation:
      if (!saw_pi && n > 0) throw ValidationError("missing directive 'pi'");
      if (!saw_pi) pi_model.pi.clear();
      inst.model = std::move(pi_model);
      break;
    case ModelKind::Cobipartite:
    case ModelKind::Generic: {
      // Merge duplicate edge lines.
      auto& edges = edge_model.edges;
      for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      inst.model = std::move(edge_model);
      break;
    }
  }

  validate_instance(inst);
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string emit_instance(const Instance& inst) {
  std::ostringstream out;
  out << "kind " << to_string(inst.kind) << "\n";
  out << "n " << inst.n << "\n";
  out << "weights";
  for (int v = 1; v <= inst.n; ++v) out << ' ' << inst.weights[v];
  out << "\n";
  out << "s";
  for (int v = 1; v <= inst.n; ++v) {
    if (inst.in_s[v]) out << ' ' << v;
  }
  out << "\n";
  switch (inst.kind) {
    case ModelKind::Interval: {
      const auto& ends = std::get<IntervalModel>(inst.model).ends;
      for (int v = 1; v <= inst.n; ++v) {
        out << "interval " << v << ' ' << ends[v - 1].first << ' '
            << ends[v - 1].second << "\n";
      }
      break;
    }
    case ModelKind::CircularArc: {
      const auto& ends = std::get<CircularArcModel>(inst.model).ends;
      for (int v = 1; v <= inst.n; ++v) {
        out << "arc " << v << ' ' << ends[v - 1].first << ' '
            << ends[v - 1].second << "\n";
      }
      break;
    }
    case ModelKind::Permutation: {
      const auto& pi = std::get<PermutationModel>(inst.model).pi;
      out << "pi";
      for (int value : pi) out << ' ' << value;
      out << "\n";
      break;
    }
    case ModelKind::Cobipartite:
    case ModelKind::Generic: {
      const auto& m = std::get<EdgeListModel>(inst.model);
      for (const auto& [u, v] : m.edges) {
        out << "edge " << u << ' ' << v << "\n";
      }
      if (m.part_a) {
        out << "partA";
        for (int v : *m.part_a) out << ' ' << v;
        out << "\n";
      }
      break;
    }
  }
  return out.str();
}

SolutionFile parse_solution(std::istream& in) {
  const std::vector<Line> lines = tokenize(in);
  SolutionFile sol;
  bool saw_weight = false;
  bool saw_removed = false;
  for (const Line& line : lines) {
    const std::string& head = line.tokens[0];
    if (head == "weight") {
      if (saw_weight) fail(line, "directive 'weight' repeated");
      saw_weight = true;
      expect_arity(line, 1);
      sol.removed_weight = parse_int(line, line.tokens[1], 0,
                                     std::numeric_limits<Weight>::max());
    } else if (head == "removed") {
      if (saw_removed) fail(line, "directive 'removed' repeated");
      saw_removed = true;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        sol.removed.push_back(static_cast<int>(
            parse_int(line, line.tokens[k], 1,
                      std::numeric_limits<int>::max())));
      }
    } else {
      fail(line, "unknown solution directive '" + head + "'");
    }
  }
  if (!saw_weight) throw ValidationError("missing directive 'weight'");
  if (!saw_removed) throw ValidationError("missing directive 'removed'");
  return sol;
}

SolutionFile parse_solution_text(const std::string& text) {
  std::istringstream in(text);
  return parse_solution(in);
}

std::string emit_solution(const Solution& sol) {
  std::ostringstream out;
  out << "weight " << sol.removed_weight << "\n";
  out << "removed";
  for (int v : sol.removed) out << ' ' << v;
  out << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open file '" + path + "' for writing");
  out << content;
  if (!out.flush()) {
    throw ValidationError("failed writing file '" + path + "'");
  }
}

}  // namespace sfvs
