#pragma once

#include <string>
#include <vector>

#include "tariffot/cost.hpp"
#include "tariffot/problem.hpp"

namespace tariffot {

/// Sparse coupling entry: `mass` units shipped from node `src` to `dst`.
struct PlanEntry {
  int src;
  int dst;
  double mass;
};

/// Optimal coupling with the boundary import/export masses. Reserve-to-
/// reserve pairs never appear (they are pruned a priori; no-arbitrage makes
/// that lossless).
struct TransportPlan {
  std::vector<PlanEntry> entries;
  std::vector<double> xi_plus;   // per-node import mass, zero off K+
  std::vector<double> xi_minus;  // per-node export mass, zero off K-
  double objective = 0.0;

  // Optimal LP potentials of the solve (a_x = -phi_plus on spt mu_plus,
  // b_y = phi_minus on spt mu_minus; NaN elsewhere). recover_dual extends
  // them to the whole grid.
  std::vector<double> lp_row_potential;
  std::vector<double> lp_col_potential;

  double total_imported() const;
  double total_exported() const;
};

/// ii / ib / bi split of a plan by reserve membership of the endpoints.
struct PlanDecomposition {
  std::vector<PlanEntry> ii;  // interior -> interior
  std::vector<PlanEntry> ib;  // interior -> reserve (exports)
  std::vector<PlanEntry> bi;  // reserve -> interior (imports)
  std::vector<double> nu_plus;   // source marginal of ib
  std::vector<double> nu_minus;  // target marginal of bi
};

/// Kantorovich potentials on every grid node.
///
/// Feasibility: -phi_plus(x) + phi_minus(y) <= c(x,y) for all pairs,
/// phi_plus <= psi_plus on K+, phi_minus >= psi_minus on K-. Off the
/// measures' supports the potentials are pinned by the tight transforms
/// phi_plus(x) = max_y(phi_minus(y) - c(x,y)) and
/// phi_minus(y) = min_x(c(x,y) + phi_plus(x)).
struct DualPotentials {
  std::vector<double> phi_plus;
  std::vector<double> phi_minus;

  double objective(const DiscreteMeasure& mu_plus,
                   const DiscreteMeasure& mu_minus) const;
};

struct SlacknessReport {
  double max_import_gap = 0.0;   // max |phi_plus - psi_plus| on spt xi_plus
  double max_export_gap = 0.0;   // max |phi_minus - psi_minus| on spt xi_minus
  double max_support_gap = 0.0;  // max |c + phi_plus - phi_minus| on spt pi
  int checked_conditions = 0;

  bool within(double tol) const {
    return max_import_gap <= tol && max_export_gap <= tol &&
           max_support_gap <= tol;
  }
};

/// Exact minimizer of  sum c*pi + sum psi_plus*xi_plus - sum psi_minus*
/// xi_minus  over plans whose interior marginals match mu_plus/mu_minus.
/// Reserve nodes act as unlimited suppliers (cost psi_plus) and absorbers
/// (cost -psi_minus); arcs with an infinite tariff are omitted. Arbitrary
/// K+ != K- reserve sets take the same path. Throws InfeasibleError when
/// unbalanced mass has no reserve to absorb or source it, NoArbitrageError
/// when the tariffs admit arbitrage.
TransportPlan solve_primal(const CostMatrix& cost, const ProblemSpec& spec);

/// Optimal dual potentials recovered from the solved plan's LP potentials
/// and extended to the whole grid by the tight transforms. The duality gap
/// against plan.objective is at most 1e-9 relative (asserted in tests).
DualPotentials recover_dual(const TransportPlan& plan, const CostMatrix& cost,
                            const ProblemSpec& spec);

PlanDecomposition decompose_plan(const TransportPlan& plan, const Grid& grid);

/// Greedy boundary selectors: T_ib(x) = argmin over export nodes of
/// c(x,y) - psi_minus(y); T_bi(y) = argmin over import nodes of
/// c(x,y) + psi_plus(x). Ties break to the lowest node index. A side whose
/// reserve role is entirely forbidden is filled with -1; when every tariff
/// is infinite the call throws.
struct BoundarySelectors {
  std::vector<int> t_ib;  // per interior source node
  std::vector<int> t_bi;  // per interior target node
};
BoundarySelectors boundary_selectors(const CostMatrix& cost,
                                     const ProblemSpec& spec);

SlacknessReport check_complementary_slackness(const TransportPlan& plan,
                                              const DualPotentials& duals,
                                              const CostMatrix& cost,
                                              const ProblemSpec& spec);

/// Checks psi_minus(y) - psi_plus(x) <= c(x,y) + tol over K+ x K- and
/// returns the worst violating pair, if any.
struct ArbitrageCheck {
  bool ok = true;
  int worst_import_node = -1;
  int worst_export_node = -1;
  double worst_violation = 0.0;
};
ArbitrageCheck check_no_arbitrage(const CostMatrix& cost,
                                  const ProblemSpec& spec, double tol = 1e-12);

}  // namespace tariffot
