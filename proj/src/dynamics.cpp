#include "tariffot/dynamics.hpp"

#include <cmath>

#include "tariffot/errors.hpp"
#include "tariffot/grid.hpp"
#include "tariffot/tariffs.hpp"

namespace tariffot {

GKind parse_gkind(const std::string& name) {
  if (name == "quadratic") return GKind::quadratic;
  if (name == "exp_saturating") return GKind::exp_saturating;
  if (name == "linear") return GKind::linear;
  throw ParseError("unknown cost shape g: '" + name +
                   "' (expected quadratic, exp_saturating or linear)");
}

std::string gkind_name(GKind g) {
  switch (g) {
    case GKind::quadratic: return "quadratic";
    case GKind::exp_saturating: return "exp_saturating";
    case GKind::linear: return "linear";
  }
  return "?";
}

double g_value(GKind g, double t) {
  switch (g) {
    case GKind::quadratic: return 0.5 * t * t;
    case GKind::exp_saturating: return 1.0 - std::exp(-t);
    case GKind::linear: return t;
  }
  return 0.0;
}

double g_prime(GKind g, double t) {
  switch (g) {
    case GKind::quadratic: return t;
    case GKind::exp_saturating: return std::exp(-t);
    case GKind::linear: return 1.0;
  }
  return 0.0;
}

double g_integral(GKind g, double a) {
  switch (g) {
    case GKind::quadratic: return a * a * a / 6.0;
    case GKind::exp_saturating: return a - 1.0 + std::exp(-a);
    case GKind::linear: return 0.5 * a * a;
  }
  return 0.0;
}

DynamicsSpec make_unit_speed_gprime(int dimension, GKind g) {
  DynamicsSpec dyn;
  dyn.name = "unit_speed_gprime(" + gkind_name(g) + ")";
  if (dimension == 1) {
    dyn.controls = {{1.0, 0.0}, {-1.0, 0.0}};
    dyn.cone_alpha = 1.0;
  } else if (dimension == 2) {
    dyn.controls = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    dyn.cone_alpha = 1.0 / std::sqrt(2.0);  // worst direction is diagonal
  } else {
    throw ParameterError("dimension must be 1 or 2");
  }
  auto controls = dyn.controls;
  dyn.velocity = [controls](double, Coord, int u) { return controls[u]; };
  dyn.run_cost = [g](double t, Coord, int) { return g_prime(g, t); };
  dyn.speed_bound = 1.0;
  dyn.lip_k = 0.0;
  // |g''| <= 1 on R+ for every built-in shape.
  dyn.lip_L = g == GKind::linear ? 0.0 : 1.0;
  dyn.time_monotonicity = g == GKind::quadratic
                              ? TimeMonotonicity::increasing
                              : (g == GKind::exp_saturating
                                     ? TimeMonotonicity::decreasing
                                     : TimeMonotonicity::none);
  dyn.velocity_time_independent = true;
  dyn.run_cost_time_independent = g == GKind::linear;
  dyn.velocity_cost_set_convex = true;  // chattering closure, declared
  dyn.hamiltonian_smooth = true;        // away from p = 0 control ties
  dyn.rate_range = [g](double t_lo, double t_hi) {
    double a = g_prime(g, t_lo);
    double b = g_prime(g, t_hi);
    return std::pair<double, double>{std::min(a, b), std::max(a, b)};
  };
  return dyn;
}

std::vector<int> TariffSpec::import_nodes(const Grid& grid) const {
  std::vector<int> out;
  for (int v : grid.reserve_plus)
    if (import_allowed(v)) out.push_back(v);
  return out;
}

std::vector<int> TariffSpec::export_nodes(const Grid& grid) const {
  std::vector<int> out;
  for (int v : grid.reserve_minus)
    if (export_allowed(v)) out.push_back(v);
  return out;
}

}  // namespace tariffot
