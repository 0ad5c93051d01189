#pragma once

#include <vector>

namespace tariffot {

/// Uncapacitated min-cost flow instance. Supplies must sum to zero after
/// balancing; real-valued masses are fine because every augmentation in the
/// simplex moves tree flow only.
struct FlowProblem {
  struct Arc {
    int from;
    int to;
    double cost;
  };
  int num_nodes = 0;
  std::vector<double> supply;  // positive = source, negative = sink
  std::vector<Arc> arcs;
};

/// Primal network simplex on a spanning-tree basis with an artificial root.
///
/// Entering arc: best reduced cost within a roving block; after a long run
/// of degenerate pivots the rule switches permanently to Bland's (first
/// eligible arc, lowest index), which guarantees termination. Leaving arc:
/// minimum ratio on the basis cycle, ties to the lowest arc index. All
/// choices are deterministic, so flows and potentials are reproducible.
class NetworkSimplex {
 public:
  enum class Status { optimal, infeasible };

  Status solve(const FlowProblem& problem);

  /// Per-arc flow of the last solve (real arcs only, problem order).
  const std::vector<double>& flows() const { return flow_; }

  /// Node potentials with reduced cost  cost(a) - pot[from] + pot[to] >= 0
  /// on every arc and equality on arcs carrying flow.
  const std::vector<double>& potentials() const { return potential_; }

  double objective() const { return objective_; }
  long pivots() const { return pivots_; }

 private:
  int entering_arc_block();
  int entering_arc_bland();
  void rebuild_tree();
  void recompute_potentials();

  // tree representation over nodes 0..n-1 plus the artificial root n
  std::vector<int> parent_;
  std::vector<int> parent_arc_;  // arc linking node to parent
  std::vector<int> depth_;
  std::vector<char> basis_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> bfs_queue_;  // root-first order, reused for potentials
  std::vector<int> cycle_arcs_;
  std::vector<int> cycle_dirs_;

  std::vector<int> arc_from_, arc_to_;
  std::vector<double> arc_cost_;
  std::vector<double> flow_all_;
  std::vector<double> potential_all_;

  std::vector<double> flow_;
  std::vector<double> potential_;
  double objective_ = 0.0;
  double eligible_tol_ = 0.0;
  long pivots_ = 0;
  int num_real_arcs_ = 0;
  int num_nodes_ = 0;
  int root_ = 0;
  int block_pos_ = 0;
  bool bland_mode_ = false;
};

}  // namespace tariffot
