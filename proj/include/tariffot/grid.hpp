#pragma once

#include <string>
#include <vector>

#include "tariffot/geometry.hpp"

namespace tariffot {

/// Regular grid over an interval or an axis-aligned rectangle.
///
/// Nodes are stored row-major (index = iy * nx + ix).  Every node is either
/// interior or a member of at least one reserve set; interior nodes belong to
/// neither.  By default the reserve sets K+ and K- both equal the geometric
/// boundary; they may be overridden with arbitrary non-interior node subsets
/// for the general import/export case.
struct Grid {
  int dimension = 1;
  int nx = 0;
  int ny = 1;
  double spacing = 0.0;  // h, identical along every axis
  Coord origin;
  std::vector<Coord> nodes;
  std::vector<char> interior;
  std::vector<int> reserve_plus;   // K+ node indices, sorted
  std::vector<int> reserve_minus;  // K- node indices, sorted

  int size() const { return static_cast<int>(nodes.size()); }
  double diameter() const;
  bool in_reserve_plus(int node) const;
  bool in_reserve_minus(int node) const;
  bool is_reserve(int node) const {
    return in_reserve_plus(node) || in_reserve_minus(node);
  }

  /// Nearest node to an arbitrary point; per-axis rounding with ties broken
  /// toward the lower index. Points outside the domain clamp to the edge.
  int nearest_node(Coord p) const;

  /// Node index whose coordinate matches `p` up to `tol`, or -1.
  int node_at(Coord p, double tol) const;

  /// Replaces both reserve sets. Listed nodes are marked non-interior;
  /// geometric boundary nodes stay non-interior even when dropped from both
  /// sets (they become plain walls). Throws on out-of-range indices.
  void override_reserves(std::vector<int> plus, std::vector<int> minus);

  std::string node_label(int node) const;
};

/// Evenly spaced interval [a,b] with n nodes; endpoints are boundary and
/// enter both reserve sets.
Grid build_interval_grid(double a, double b, int n);

/// Rectangle [ax,bx] x [ay,by] with nx * ny nodes; the perimeter is boundary
/// and enters both reserve sets. Spacing must agree along both axes.
Grid build_rectangle_grid(double ax, double bx, int nx, double ay, double by,
                          int ny);

}  // namespace tariffot
