#pragma once

#include <vector>

#include "tariffot/cost.hpp"
#include "tariffot/problem.hpp"
#include "tariffot/time_expanded.hpp"

namespace tariffot {

/// H(t,x,p) = max_u { k(t,x,u).p - L(t,x,u) } over the finite control set,
/// with the argmax control (ties to the lowest index).
struct HamiltonianValue {
  double value;
  int argmax_control;
};
HamiltonianValue hamiltonian(double t, Coord x, Coord p,
                             const DynamicsSpec& dyn);

/// Value field J(t,x) of the free-stopping problem with terminal reward
/// phi_minus, on the same arc tables as the cost search.
struct ValueField {
  int n = 0;
  int layers = 0;  // arc layers; J has layers+1 time slices
  double dt = 0.0;
  std::vector<double> values;    // (layers+1) x n, slice-major
  std::vector<double> obstacle;  // phi_minus per node

  double at(int layer, int node) const { return values[layer * n + node]; }
};

/// Backward induction J(T,.) = phi_minus,
/// J(t,x) = max(phi_minus(x), max_u J(t+dt, next(x,u)) - L dt).
/// Equals the exhaustive free-stopping optimum over (control path, stop
/// layer) on the discrete graph, and J(0,x) = max_y (phi_minus(y) - c(x,y))
/// when the same graph produced the cost matrix.
ValueField solve_value_function(const std::vector<double>& phi_minus,
                                const ProblemSpec& spec,
                                const TimeExpandedGraph& graph);

/// Replaces phi_minus by min over t <= t_max - dt of J(t,.) and re-solves
/// once. The final forced layer is excluded from the min. With the obstacle
/// constraint active this is usually the identity; exposed behind a flag.
ValueField solve_value_function_tightened(std::vector<double>* phi_minus,
                                          const ProblemSpec& spec,
                                          const TimeExpandedGraph& graph);

/// Candidate value of the Eulerian dual: sum phi_minus d(mu_minus) -
/// sum J(0,.) d(mu_plus). Throws CandidateInfeasibleError when the reserve
/// constraints psi_minus <= phi_minus on K- or J(0,.) <= psi_plus on K+
/// fail beyond tolerance.
double dual_value_eulerian(const ValueField& field, const ProblemSpec& spec,
                           double tol = 1e-9);

/// Per-node first (dL/dt > 0) or last (dL/dt < 0) contact time of J with
/// the obstacle.
struct FreeBoundary {
  std::vector<int> contact_layer;
  std::vector<double> tau_inv;
  TimeMonotonicity direction = TimeMonotonicity::none;
};

/// dL/dt > 0: J(.,x) is non-increasing, contact is a final segment and
/// tau_inv is its first layer. dL/dt < 0: contact starts at t=0 and
/// tau_inv is the last layer of that initial run; horizon-forced contact
/// near t_max is a truncation artifact and is ignored. Requires a declared
/// monotonicity (throws otherwise).
FreeBoundary free_boundary(const ValueField& field,
                           TimeMonotonicity monotonicity,
                           double tol = 1e-10);

enum class FlowStopReason { transversality, horizon, immediate };

/// State/costate trajectory of the Hamiltonian system
/// gamma' = dH/dp (= k at the argmax control), p' = -dH/dx.
struct FlowTrajectory {
  struct Sample {
    double t;
    Coord x;
    Coord p;
  };
  std::vector<Sample> samples;
  double stop_time = 0.0;
  FlowStopReason reason = FlowStopReason::horizon;
  double hamiltonian_at_stop = 0.0;
};

/// Fixed-step RK4 with step dt/4. Forward mode integrates from t0 until the
/// first sign change of t -> H(t,gamma,p), located by bisection in time to
/// 1e-10 (valid because dH/dt = -dL/dt has one sign). Reverse mode
/// integrates from t0 backward to time 0 without event detection. Throws
/// KinkCrossingError when the argmax control changes inside a step (H is
/// only piecewise smooth there, e.g. p crossing 0 for |p| Hamiltonians).
FlowTrajectory hamiltonian_flow_forward(Coord x0, Coord p0,
                                        const DynamicsSpec& dyn, double t0,
                                        double t_end, double dt);
FlowTrajectory hamiltonian_flow_reverse(Coord y, Coord p_end,
                                        const DynamicsSpec& dyn, double t0,
                                        double dt);

/// Transport maps built from the Hamiltonian flow.
struct MapPoint {
  bool valid = false;       // false: seed skipped (gradient kink) or kink hit
  int target_node = -1;
  Coord target;
  double tau = 0.0;
  bool hits_reserve = false;  // classifies ii vs ib / bi
  std::string skip_reason;
};

struct TransportMaps {
  std::vector<MapPoint> t_plus;   // per node, seeded on spt mu_plus
  std::vector<MapPoint> t_minus;  // per node, seeded on spt mu_minus
};

/// T+ from forward flows seeded at spt(mu_plus) with p0 = grad J(0,.);
/// T- from reverse flows seeded at (tau_inv(y), y) with p = grad phi_minus.
/// Gradients use centered differences (one-sided at the domain edge); seeds
/// where local one-sided slopes disagree beyond the kink threshold are
/// skipped with a reason instead of integrating garbage.
TransportMaps transport_maps(const ValueField& field, const FreeBoundary& fb,
                             const ProblemSpec& spec);

}  // namespace tariffot
