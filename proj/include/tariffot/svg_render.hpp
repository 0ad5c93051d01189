#pragma once

#include <string>
#include <vector>

#include "tariffot/geometry.hpp"

namespace tariffot {

/// Inputs for the trajectory/free-boundary figure. Coordinates are domain
/// coordinates; the renderer maps space to the horizontal axis and time to
/// the vertical axis (time increases upward).
struct RenderInput {
  struct Polyline {
    std::vector<Coord> points;  // (x, t) pairs: x spatial, y holds time
  };
  std::vector<Polyline> trajectories;
  std::vector<Coord> free_boundary;  // (coord, tau_inv), sorted by coord
  bool shade_above = true;  // contact region side: t >= tau_inv when true
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  double t_hi = 1.0;
};

/// Deterministic SVG 1.1 figure, fixed viewBox 0 0 800 400: shaded contact
/// region, free boundary polyline, trajectories. Byte-identical output for
/// identical inputs.
std::string render_svg(const RenderInput& input);

}  // namespace tariffot
