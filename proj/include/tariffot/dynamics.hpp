#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tariffot/geometry.hpp"

namespace tariffot {

/// Sign of the running cost's time derivative, required by the free-boundary
/// and flow machinery.
enum class TimeMonotonicity { increasing, decreasing, none };

/// Finite-control dynamics k(t,x,u) and running cost L(t,x,u) together with
/// the declared constants the validation layer spot-checks.
struct DynamicsSpec {
  std::string name;
  std::vector<Coord> controls;  // the control set U
  std::function<Coord(double t, Coord x, int u)> velocity;   // k
  std::function<double(double t, Coord x, int u)> run_cost;  // L

  double speed_bound = 0.0;  // kappa: |k| <= kappa
  double lip_k = 0.0;        // Lipschitz constant of k in (t,x)
  double lip_L = 0.0;        // Lipschitz constant of L in x
  double cone_alpha = 0.0;   // inward-cone constant
  double rate_upper = 0.0;   // beta1: L <= beta1 on the sampled horizon
  double rate_lower = 0.0;   // beta2: L >= beta2 > 0 on the sampled horizon

  TimeMonotonicity time_monotonicity = TimeMonotonicity::none;
  bool velocity_time_independent = false;
  bool run_cost_time_independent = false;
  bool velocity_cost_set_convex = false;  // declared, not sampled
  bool hamiltonian_smooth = false;        // H is C^1 away from control ties

  /// Optional analytic range of L over all (x,u) for t in [t_lo, t_hi];
  /// when present, problem finalization uses it to pin beta1/beta2 to the
  /// actual sampled horizon.
  std::function<std::pair<double, double>(double t_lo, double t_hi)>
      rate_range;

  int num_controls() const { return static_cast<int>(controls.size()); }
};

/// Built-in end-time cost shapes g for the unit-speed family L = g'(t).
enum class GKind { quadratic, exp_saturating, linear };

GKind parse_gkind(const std::string& name);
std::string gkind_name(GKind g);

double g_value(GKind g, double t);     // g(t), g(0) = 0
double g_prime(GKind g, double t);     // g'(t)
double g_integral(GKind g, double a);  // integral of g over [0,a]

/// Unit-speed dynamics with controls {+1,-1} (1-D) or {+-e1,+-e2} (2-D) and
/// running cost L(t,x,u) = g'(t). rate_range is supplied, so beta1/beta2 are
/// pinned to the sampled horizon during problem finalization.
DynamicsSpec make_unit_speed_gprime(int dimension, GKind g);

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace tariffot
