#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tariffot/cost.hpp"
#include "tariffot/transport.hpp"

namespace tariffot {

/// Time-indexed density process rho over (node, control) plus the stopping
/// distribution eta over (layer, node).
///
/// rho[i] holds the mass in flight during [i*dt, (i+1)*dt); an atom whose
/// trajectory stops at layer s occupies rho[0..s-1] and lands in eta at
/// (s, endpoint), so the layer-0 node marginal of rho plus eta at layer 0
/// equals mu_plus + chi_plus, and mass(rho[i]) = total - eta up to layer i.
struct EulerianPair {
  using StateKey = std::pair<int, int>;  // (node, control)
  using StopKey = std::pair<int, int>;   // (layer, node)

  int layers = 0;  // number of arc layers (t_steps)
  double dt = 0.0;
  std::vector<std::map<StateKey, double>> rho;
  std::map<StopKey, double> eta;
  std::vector<double> chi_plus;   // = xi_plus of the plan
  std::vector<double> chi_minus;  // = xi_minus of the plan
  double objective = 0.0;  // sum L*rho*dt + sum psi_plus*rho0 - sum psi_minus*eta

  double eta_total() const;
  double rho_layer_mass(int layer) const;

  /// Node marginal of the initial layer including immediately stopped mass.
  std::vector<double> initial_marginal(int num_nodes) const;

  /// Interior part of the time-marginal of eta.
  std::vector<double> eta_interior_marginal(const Grid& grid) const;
};

/// Spreads every coupling atom along its selected optimal trajectory. The
/// Eulerian objective matches the plan objective exactly up to float
/// summation order because trajectory costs are additive.
EulerianPair lift_plan_to_eulerian(const PlanDecomposition& decomp,
                                   const CostSolver& solver);

/// Fixed, versioned test basis: low-order polynomials in (t,x) plus tensor
/// hat bumps on a fixed lattice over [0,t_max] x domain. Each function
/// carries derivative constants for its documented consistency bound
/// |residual| <= mass * t_max * (2 d2 kappa^2 (dt+h) + d1 * snap_rate).
struct TestFunction {
  std::string name;
  std::function<double(double t, Coord x)> value;
  double d1_bound = 0.0;  // sup of first partials
  double d2_bound = 0.0;  // sup of second partials (effective, for hats)
};
std::vector<TestFunction> residual_test_basis(const ProblemSpec& spec);

struct ResidualEntry {
  std::string test_function;
  double residual = 0.0;
  double bound = 0.0;
};

struct WeakResidualReport {
  std::vector<ResidualEntry> entries;
  double max_abs_residual = 0.0;
  double max_normalized = 0.0;  // |residual| / total mass

  bool within_bounds() const;
};

/// Residual of the weak continuity equation over the test basis, evaluated
/// with the same forward differences in t and x that the lift construction
/// uses (so lifted pairs meet the documented (dt+h) consistency bound
/// rather than being exactly zero).
WeakResidualReport continuity_residual(const EulerianPair& pair,
                                       const ProblemSpec& spec,
                                       const DiscreteMeasure& mu_plus);

/// Residual of the stopping-marginal condition: the interior time-marginal
/// of eta must equal mu_minus exactly.
WeakResidualReport stopping_marginal_residual(const EulerianPair& pair,
                                              const ProblemSpec& spec,
                                              const DiscreteMeasure& mu_minus);

}  // namespace tariffot
