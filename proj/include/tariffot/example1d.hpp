#pragma once

#include <string>

#include "tariffot/dynamics.hpp"

namespace tariffot {

/// Closed-form reference solution of the 1-D benchmark on (0,2): unit-speed
/// particles, running cost g'(t), mu_plus uniform on [0,1], mu_minus uniform
/// on [1,2], export rebate p_minus at 0, import tariff p_plus at 2.
///
/// Convex g (strictly increasing cost rate): mass on [0,x1) exports at 0,
/// [x1,1] shifts right by 1-x1, demand on (2-x1,2] imports at 2. Concave g
/// reverses the interior map's orientation: x travels to 2-x.
struct Example1DSolution {
  GKind g = GKind::quadratic;
  double p_minus = 0.0;
  double p_plus = 0.0;
  double x1 = 0.0;
  double total_cost = 0.0;

  double phi_minus(double y) const;  // on [1,2]
  double tau_inv(double y) const;    // free boundary on [1,2]

  /// Value of the interior/boundary map at a source point in [0,1].
  double map_forward(double x) const;

  std::string describe_maps() const;
};

/// Evaluates the piecewise formulas at a given split point x1 in [0,1].
/// Only the strictly convex (quadratic) and strictly concave
/// (exp_saturating) cost shapes are supported.
Example1DSolution closed_form_example(GKind g, double p_minus, double p_plus,
                                      double x1);

/// Solves the optimality criterion phi_minus(2; x1) = p_plus for x1 by
/// bisection on [0,1] to 1e-12; clamps to an endpoint when no interior root
/// exists. Requires the no-arbitrage inequality p_minus + p_plus >= -g(2).
struct OptimalX1 {
  double x1 = 0.0;
  bool clamped = false;
};
OptimalX1 optimal_x1(GKind g, double p_minus, double p_plus);

/// phi_minus(2) as a function of the split point; strictly decreasing in x1.
double phi_minus_at_two(GKind g, double p_minus, double x1);

}  // namespace tariffot
