#include "tariffot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tariffot/errors.hpp"

namespace tariffot {

namespace {

// Per-axis nearest index with ties to the lower index.
int nearest_axis_index(double p, double origin, double h, int count) {
  if (count == 1) return 0;
  double q = (p - origin) / h;
  int lo = static_cast<int>(std::floor(q));
  lo = std::clamp(lo, 0, count - 1);
  int hi = std::clamp(lo + 1, 0, count - 1);
  double d_lo = std::abs(p - (origin + lo * h));
  double d_hi = std::abs(p - (origin + hi * h));
  return d_lo <= d_hi ? lo : hi;
}

}  // namespace

double Grid::diameter() const {
  double wx = (nx - 1) * spacing;
  double wy = (ny - 1) * spacing;
  return std::sqrt(wx * wx + wy * wy);
}

bool Grid::in_reserve_plus(int node) const {
  return std::binary_search(reserve_plus.begin(), reserve_plus.end(), node);
}

bool Grid::in_reserve_minus(int node) const {
  return std::binary_search(reserve_minus.begin(), reserve_minus.end(), node);
}

int Grid::nearest_node(Coord p) const {
  int ix = nearest_axis_index(p.x, origin.x, spacing, nx);
  int iy = dimension == 2 ? nearest_axis_index(p.y, origin.y, spacing, ny) : 0;
  return iy * nx + ix;
}

int Grid::node_at(Coord p, double tol) const {
  int i = nearest_node(p);
  return distance(nodes[i], p) <= tol ? i : -1;
}

void Grid::override_reserves(std::vector<int> plus, std::vector<int> minus) {
  for (const auto* set : {&plus, &minus}) {
    for (int v : *set) {
      if (v < 0 || v >= size())
        throw ParameterError("reserve node index out of range: " +
                             std::to_string(v));
    }
  }
  std::sort(plus.begin(), plus.end());
  plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
  std::sort(minus.begin(), minus.end());
  minus.erase(std::unique(minus.begin(), minus.end()), minus.end());
  reserve_plus = std::move(plus);
  reserve_minus = std::move(minus);
  for (int v : reserve_plus) interior[v] = 0;
  for (int v : reserve_minus) interior[v] = 0;
}

std::string Grid::node_label(int node) const {
  char buf[64];
  if (dimension == 1) {
    std::snprintf(buf, sizeof(buf), "%.10g", nodes[node].x);
  } else {
    std::snprintf(buf, sizeof(buf), "%.10g|%.10g", nodes[node].x,
                  nodes[node].y);
  }
  return buf;
}

Grid build_interval_grid(double a, double b, int n) {
  if (!(b > a)) throw ParameterError("interval extent must be positive");
  if (n < 3) throw ParameterError("interval grid needs at least 3 nodes");
  Grid g;
  g.dimension = 1;
  g.nx = n;
  g.ny = 1;
  g.spacing = (b - a) / (n - 1);
  g.origin = {a, 0.0};
  g.nodes.resize(n);
  g.interior.assign(n, 1);
  for (int i = 0; i < n; ++i) g.nodes[i] = {a + i * g.spacing, 0.0};
  g.nodes.back().x = b;  // avoid drift on the far endpoint
  g.interior[0] = 0;
  g.interior[n - 1] = 0;
  g.reserve_plus = {0, n - 1};
  g.reserve_minus = {0, n - 1};
  return g;
}

Grid build_rectangle_grid(double ax, double bx, int nx, double ay, double by,
                          int ny) {
  if (!(bx > ax) || !(by > ay))
    throw ParameterError("rectangle extents must be positive");
  if (nx < 3 || ny < 3)
    throw ParameterError("rectangle grid needs at least 3 nodes per axis");
  double hx = (bx - ax) / (nx - 1);
  double hy = (by - ay) / (ny - 1);
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
    throw ParameterError("rectangle spacing must agree along both axes");
  Grid g;
  g.dimension = 2;
  g.nx = nx;
  g.ny = ny;
  g.spacing = hx;
  g.origin = {ax, ay};
  g.nodes.resize(nx * ny);
  g.interior.assign(nx * ny, 1);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      g.nodes[iy * nx + ix] = {ax + ix * hx, ay + iy * hy};
    }
  }
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1) {
        int v = iy * nx + ix;
        g.interior[v] = 0;
        g.reserve_plus.push_back(v);
        g.reserve_minus.push_back(v);
      }
    }
  }
  return g;
}

}  // namespace tariffot
