#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "tariffot/problem.hpp"
#include "tariffot/time_expanded.hpp"

namespace tariffot {

/// Upper bound on the time needed to steer x to y under the inward-cone
/// condition: delta/(1-theta)*|x-y| with
/// theta = sqrt(1 + 2*delta*(-alpha + delta*kappa*(kappa + lip_k*diam))).
/// Throws ParameterError when delta makes theta >= 1, naming the admissible
/// range (0, alpha/(kappa*(kappa + lip_k*diam))).
double reach_time_bound(Coord x, Coord y, const DynamicsSpec& dyn,
                        double delta, double domain_diameter);

/// theta-minimizing default: delta = alpha / (2*kappa*(kappa + lip_k*diam)).
double default_reach_delta(const DynamicsSpec& dyn, double domain_diameter);

/// Pairwise free end-time control costs with stop layers.
struct CostMatrix {
  int n = 0;
  std::vector<double> c;            // row-major, c[x*n + y]
  std::vector<int32_t> tau_layer;   // earliest optimal arrival layer
  double dt = 0.0;

  double cost(int x, int y) const { return c[x * n + y]; }
  double tau(int x, int y) const { return tau_layer[x * n + y] * dt; }
};

struct Trajectory {
  struct Sample {
    double t;
    int node;
    int control;  // control taken from this sample; -1 on the final sample
  };
  std::vector<Sample> samples;  // first node = x, last node = y
  double stop_time = 0.0;
  double cost = 0.0;

  int start_node() const { return samples.front().node; }
  int end_node() const { return samples.back().node; }
};

struct LipschitzReport {
  double empirical_source_side = 0.0;  // max |c(x,y)-c(x',y)| / |x-x'|
  double empirical_target_side = 0.0;  // max |c(x,y)-c(x,y')| / |y-y'|
  double theoretical_bound = 0.0;
  bool within_bound = false;
};

/// Shortest-path cost engine over the time-expanded graph.
///
/// Relaxation ties break lexicographically on (cost, predecessor node,
/// control), and the earliest layer attaining the minimum is recorded, so
/// reconstructed trajectories are a deterministic function of (x,y) — a
/// concrete selector for the optimal (trajectory, control, stop time).
/// When both k and L are time-independent the per-layer sweep collapses to a
/// single spatial Dijkstra; the two routes agree exactly (tested).
class CostSolver {
 public:
  explicit CostSolver(const ProblemSpec& spec);
  ~CostSolver();

  const CostMatrix& matrix() const { return matrix_; }
  const TimeExpandedGraph& graph() const { return graph_; }
  const ProblemSpec& spec() const { return *spec_; }

  /// Reconstructs the optimal trajectory for a reachable pair.
  Trajectory optimal_trajectory(int x, int y) const;

  /// Cost of the best path from x (departing at the given layer) to y,
  /// arriving no later than the horizon. Used by the triangle-type
  /// consistency checks with shifted start times.
  double cost_from_layer(int start_layer, int x, int y) const;

  LipschitzReport check_lipschitz() const;

  /// Worst-pair reachability bound at the spec's steering parameter.
  double reach_bound(int x, int y) const;

 private:
  struct RowSearch;  // per-source labels + predecessors

  void solve_row(int source, RowSearch* row) const;
  void solve_row_collapsed(int source, RowSearch* row) const;

  const ProblemSpec* spec_;
  TimeExpandedGraph graph_;
  CostMatrix matrix_;
  bool collapsed_ = false;

  mutable std::mutex cache_mutex_;
  mutable int cached_source_ = -1;
  mutable std::shared_ptr<RowSearch> cached_row_;
};

/// Convenience wrapper returning just the matrix.
CostMatrix compute_cost_matrix(const ProblemSpec& spec);

}  // namespace tariffot
