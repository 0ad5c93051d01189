#pragma once

#include <vector>

namespace tariffot {

struct Grid;

/// Nonnegative mass per grid node.
struct DiscreteMeasure {
  std::vector<double> weights;

  DiscreteMeasure() = default;
  explicit DiscreteMeasure(int n) : weights(n, 0.0) {}

  double total() const;
  bool empty_support() const;

  /// Node indices carrying positive mass, ascending.
  std::vector<int> support() const;
};

/// Cell-averaged discretization of a uniform density on [lo,hi] (1-D) or
/// [lo.x,hi.x] x [lo.y,hi.y] (2-D), scaled to the requested total mass.
/// Mass falling into boundary-node cells is reassigned to the nearest
/// interior node so the support stays interior and the total is exact.
DiscreteMeasure uniform_measure_1d(const Grid& grid, double lo, double hi,
                                   double total_mass);
DiscreteMeasure uniform_measure_2d(const Grid& grid, double lo_x, double hi_x,
                                   double lo_y, double hi_y,
                                   double total_mass);

}  // namespace tariffot
