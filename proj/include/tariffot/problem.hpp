#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tariffot/dynamics.hpp"
#include "tariffot/grid.hpp"
#include "tariffot/measure.hpp"
#include "tariffot/tariffs.hpp"

namespace tariffot {

struct CostMatrix;

struct Discretization {
  double dt = 0.0;
  double t_max_factor = 1.5;  // horizon safety factor over the reach bound
};

/// Complete problem instance. Immutable after finalize(); all solver stages
/// share it by const reference.
struct ProblemSpec {
  Grid grid;
  DiscreteMeasure mu_plus;
  DiscreteMeasure mu_minus;
  TariffSpec tariffs;
  DynamicsSpec dynamics;
  Discretization discretization;

  // Derived during finalize().
  double delta_step = 0.0;  // steering step of the reachability bound
  double reach_coefficient = 0.0;  // delta/(1-theta)
  double t_max = 0.0;
  int t_steps = 0;

  /// Computes the steering parameter, the horizon t_max (t_max_factor times
  /// the worst-pair reachability bound, rounded up to a whole number of
  /// steps) and, when the dynamics provides rate_range, the beta bounds.
  /// Throws ParameterError on inconsistent inputs.
  void finalize();

  bool finalized() const { return t_steps > 0; }
};

/// One assumption check. Failures carry the violating sample.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  std::string summary() const;
};

/// Spot-checks the standing assumptions on grid samples: control-set
/// sanity, the speed bound, Lipschitz bounds of k and L, the inward-cone
/// condition, the Lagrangian bounds, time-independence of k, the declared
/// time monotonicity of L, discrete motion under the snap rule, and (when a
/// cost matrix is supplied) the no-arbitrage inequality on reserve pairs.
/// Never mutates the spec; failures are report entries, not exceptions.
ValidationReport validate_problem(const ProblemSpec& spec,
                                  const CostMatrix* cost = nullptr);

}  // namespace tariffot
