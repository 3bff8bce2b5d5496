#pragma once

// Plain-text instance and solution formats.
//
// Instance files: one directive per line; '#' starts a comment; blank lines
// are ignored.  The first directive must be `kind`, everything after it may
// appear in any order:
//
//   kind interval|circular-arc|permutation|cobipartite|generic
//   n N
//   weights w1 ... wN
//   s v1 ... vk              (terminal set, possibly empty)
//   interval i l r           (interval kind: one line per vertex i)
//   arc i a b                (circular-arc kind: arc runs clockwise a -> b)
//   pi p1 ... pN             (permutation kind)
//   edge u v                 (cobipartite/generic kinds; duplicates merge)
//   partA v1 ... vk          (optional, cobipartite/generic kinds)
//
// Solution files:
//
//   weight W
//   removed v1 ... vk        (ascending)

#include <iosfwd>
#include <string>
#include <vector>

#include "sfvs/core.hpp"

namespace sfvs {

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
std::string emit_instance(const Instance& inst);

struct SolutionFile {
  Weight removed_weight = 0;
  std::vector<int> removed;
};

SolutionFile parse_solution(std::istream& in);
SolutionFile parse_solution_text(const std::string& text);
std::string emit_solution(const Solution& sol);

std::string read_file(const std::string& path);           // ValidationError on I/O failure
void write_file(const std::string& path, const std::string& content);

}  // namespace sfvs
