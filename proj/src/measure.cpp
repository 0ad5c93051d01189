#include "tariffot/measure.hpp"

#include <algorithm>
#include <cmath>

#include "tariffot/errors.hpp"
#include "tariffot/grid.hpp"

namespace tariffot {

double DiscreteMeasure::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

bool DiscreteMeasure::empty_support() const {
  return std::all_of(weights.begin(), weights.end(),
                     [](double w) { return w == 0.0; });
}

std::vector<int> DiscreteMeasure::support() const {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i)
    if (weights[i] > 0.0) s.push_back(i);
  return s;
}

namespace {

double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

// Length (1-D) or area (2-D) of cell(i) intersected with the box.
double cell_overlap(const Grid& grid, int node, double lo_x, double hi_x,
                    double lo_y, double hi_y) {
  double h = grid.spacing;
  Coord p = grid.nodes[node];
  double ox = overlap(p.x - h / 2, p.x + h / 2, lo_x, hi_x);
  if (grid.dimension == 1) return ox;
  double oy = overlap(p.y - h / 2, p.y + h / 2, lo_y, hi_y);
  return ox * oy;
}

int nearest_interior(const Grid& grid, int node) {
  int best = -1;
  double best_d = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    if (!grid.interior[i]) continue;
    double d = distance(grid.nodes[i], grid.nodes[node]);
    if (best < 0 || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  if (best < 0) throw ParameterError("grid has no interior nodes");
  return best;
}

DiscreteMeasure box_measure(const Grid& grid, double lo_x, double hi_x,
                            double lo_y, double hi_y, double total_mass) {
  if (total_mass < 0.0) throw ParameterError("measure mass must be >= 0");
  DiscreteMeasure m(grid.size());
  if (total_mass == 0.0) return m;
  double covered = 0.0;
  std::vector<std::pair<int, double>> boundary_spill;
  for (int i = 0; i < grid.size(); ++i) {
    double w = cell_overlap(grid, i, lo_x, hi_x, lo_y, hi_y);
    if (w <= 0.0) continue;
    covered += w;
    if (grid.interior[i]) {
      m.weights[i] += w;
    } else {
      boundary_spill.push_back({i, w});
    }
  }
  if (covered <= 0.0)
    throw ParameterError("uniform support does not intersect the grid");
  // Support must stay interior; reassign boundary-cell mass next door.
  for (auto [node, w] : boundary_spill)
    m.weights[nearest_interior(grid, node)] += w;
  double scale = total_mass / covered;
  for (double& w : m.weights) w *= scale;
  return m;
}

}  // namespace

DiscreteMeasure uniform_measure_1d(const Grid& grid, double lo, double hi,
                                   double total_mass) {
  if (grid.dimension != 1)
    throw ParameterError("uniform_measure_1d needs a 1-D grid");
  if (!(hi > lo)) throw ParameterError("uniform support must have hi > lo");
  return box_measure(grid, lo, hi, 0.0, 0.0, total_mass);
}

DiscreteMeasure uniform_measure_2d(const Grid& grid, double lo_x, double hi_x,
                                   double lo_y, double hi_y,
                                   double total_mass) {
  if (grid.dimension != 2)
    throw ParameterError("uniform_measure_2d needs a 2-D grid");
  if (!(hi_x > lo_x) || !(hi_y > lo_y))
    throw ParameterError("uniform support must have hi > lo per axis");
  return box_measure(grid, lo_x, hi_x, lo_y, hi_y, total_mass);
}

}  // namespace tariffot
