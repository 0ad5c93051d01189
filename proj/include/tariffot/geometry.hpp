#pragma once

#include <cmath>

namespace tariffot {

/// Point or vector in the grid domain. 1-D problems keep y == 0.
struct Coord {
  double x = 0.0;
  double y = 0.0;

  friend Coord operator+(Coord a, Coord b) { return {a.x + b.x, a.y + b.y}; }
  friend Coord operator-(Coord a, Coord b) { return {a.x - b.x, a.y - b.y}; }
  friend Coord operator*(double s, Coord a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Coord a, Coord b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Coord a, Coord b) { return a.x * b.x + a.y * b.y; }
inline double norm(Coord a) { return std::sqrt(dot(a, a)); }
inline double distance(Coord a, Coord b) { return norm(a - b); }

}  // namespace tariffot
