#pragma once

#include <string>

#include "tariffot/problem.hpp"

namespace tariffot {

/// Parses a problem file into a finalized ProblemSpec.
///
/// Top-level keys: grid, mu_plus, mu_minus, tariffs, dynamics,
/// discretization. Unknown keys anywhere are a hard parse error; every
/// numeric field is range-checked. Errors carry the JSON path or byte
/// position of the offending element. See README for the full schema.
ProblemSpec parse_config(const std::string& text);

/// Reads the file and delegates to parse_config.
ProblemSpec load_problem(const std::string& path);

/// Built-in problem of the 1-D benchmark (both cost shapes) on [0,2]:
/// n nodes, dt = h, uniform measures, tariffs p_minus at 0 / p_plus at 2.
ProblemSpec make_example1d_problem(GKind g, double p_minus, double p_plus,
                                   int n);

}  // namespace tariffot
