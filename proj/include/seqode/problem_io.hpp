#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "seqode/solver.hpp"

namespace seqode {

/// Parse or schema failure, with location context (json path, or line:column
/// for syntax errors).
class ProblemFileError : public std::runtime_error {
 public:
  explicit ProblemFileError(const std::string& what) : std::runtime_error(what) {}
};

/// Load a problem instance from the JSON problem file format (documented in
/// docs/problem_format.md). Throws ProblemFileError with a location-bearing
/// message on any syntax or schema violation.
Problem load_problem(const std::string& path);
Problem parse_problem(const std::string& text, const std::string& origin = "<string>");

/// Trajectory CSV: header "t,u0,...,u{N-1}", one row per grid node, decimal
/// values with 17 significant digits (exact double round-trip), UTF-8, LF,
/// '.' separator.
void write_trajectory_csv(std::ostream& os, const Trajectory& u);
void write_trajectory_csv(const std::string& path, const Trajectory& u);

/// Reads a trajectory CSV back; the beyond-tail is taken from the caller
/// (trajectories do not serialize their symbolic part).
Trajectory read_trajectory_csv(const std::string& path, const Tail& beyond);

}  // namespace seqode
