#include "tariffot/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tariffot/errors.hpp"

namespace tariffot {

namespace {
constexpr double kEligibleFactor = 1e-12;
}

NetworkSimplex::Status NetworkSimplex::solve(const FlowProblem& problem) {
  const int n = problem.num_nodes;
  num_nodes_ = n;
  root_ = n;
  num_real_arcs_ = static_cast<int>(problem.arcs.size());
  const int m_all = num_real_arcs_ + n;

  double cost_scale = 1.0;
  arc_from_.assign(m_all, 0);
  arc_to_.assign(m_all, 0);
  arc_cost_.assign(m_all, 0.0);
  for (int a = 0; a < num_real_arcs_; ++a) {
    const auto& arc = problem.arcs[a];
    if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n)
      throw ParameterError("flow arc endpoint out of range");
    arc_from_[a] = arc.from;
    arc_to_[a] = arc.to;
    arc_cost_[a] = arc.cost;
    cost_scale = std::max(cost_scale, std::abs(arc.cost));
  }
  const double big = (n + 2.0) * (cost_scale + 1.0);
  eligible_tol_ = kEligibleFactor * (cost_scale + 1.0);

  double supply_scale = 0.0;
  for (double s : problem.supply) supply_scale = std::max(supply_scale, std::abs(s));

  // Artificial arcs hang every node on the root; they form the initial basis.
  flow_all_.assign(m_all, 0.0);
  basis_.assign(m_all, 0);
  for (int v = 0; v < n; ++v) {
    int a = num_real_arcs_ + v;
    if (problem.supply[v] >= 0.0) {
      arc_from_[a] = v;
      arc_to_[a] = root_;
      flow_all_[a] = problem.supply[v];
    } else {
      arc_from_[a] = root_;
      arc_to_[a] = v;
      flow_all_[a] = -problem.supply[v];
    }
    arc_cost_[a] = big;
    basis_[a] = 1;
  }
  bfs_queue_.clear();
  rebuild_tree();
  recompute_potentials();

  pivots_ = 0;
  bland_mode_ = false;
  block_pos_ = 0;
  long degenerate_run = 0;
  const long degeneracy_limit = 100 + 10L * n;
  const long pivot_cap = 200000 + 50L * m_all;

  for (;;) {
    int e = bland_mode_ ? entering_arc_bland() : entering_arc_block();
    if (e < 0) break;
    if (++pivots_ > pivot_cap)
      throw InternalError("network simplex exceeded its pivot cap");

    // cycle: entering arc u->v plus the tree path from v back to u
    int u = arc_from_[e], v = arc_to_[e];
    cycle_arcs_.clear();
    cycle_dirs_.clear();
    int a = u, b = v;
    while (a != b) {
      if (depth_[a] >= depth_[b]) {
        int t = parent_arc_[a];
        // cycle runs parent->a on the u side
        cycle_arcs_.push_back(t);
        cycle_dirs_.push_back(arc_to_[t] == a ? +1 : -1);
        a = parent_[a];
      } else {
        int t = parent_arc_[b];
        // cycle runs b->parent on the v side
        cycle_arcs_.push_back(t);
        cycle_dirs_.push_back(arc_from_[t] == b ? +1 : -1);
        b = parent_[b];
      }
    }

    double theta = -1.0;
    int leaving = -1;
    for (size_t i = 0; i < cycle_arcs_.size(); ++i) {
      if (cycle_dirs_[i] != -1) continue;
      int t = cycle_arcs_[i];
      if (theta < 0.0 || flow_all_[t] < theta ||
          (flow_all_[t] == theta && t < leaving)) {
        theta = flow_all_[t];
        leaving = t;
      }
    }
    if (leaving < 0)
      throw InternalError("network simplex found an uncapacitated negative cycle");

    flow_all_[e] += theta;
    for (size_t i = 0; i < cycle_arcs_.size(); ++i)
      flow_all_[cycle_arcs_[i]] += cycle_dirs_[i] * theta;
    flow_all_[leaving] = 0.0;

    basis_[leaving] = 0;
    basis_[e] = 1;
    rebuild_tree();
    recompute_potentials();

    degenerate_run = theta == 0.0 ? degenerate_run + 1 : 0;
    if (degenerate_run > degeneracy_limit) bland_mode_ = true;
  }

  // Feasible iff the artificial arcs drained.
  double feas_tol = 1e-9 * (supply_scale + 1.0);
  for (int a = num_real_arcs_; a < m_all; ++a)
    if (flow_all_[a] > feas_tol) return Status::infeasible;

  flow_.assign(flow_all_.begin(), flow_all_.begin() + num_real_arcs_);
  potential_.assign(potential_all_.begin(),
                    potential_all_.begin() + num_nodes_);
  objective_ = 0.0;
  for (int a = 0; a < num_real_arcs_; ++a)
    objective_ += arc_cost_[a] * flow_all_[a];

  // Optimality certificate on the real arcs.
  for (int a = 0; a < num_real_arcs_; ++a) {
    double red = arc_cost_[a] - potential_all_[arc_from_[a]] +
                 potential_all_[arc_to_[a]];
    if (red < -10 * eligible_tol_)
      throw InternalError("network simplex stopped with an eligible arc");
  }
  return Status::optimal;
}

int NetworkSimplex::entering_arc_block() {
  const int m = num_real_arcs_;
  if (m == 0) return -1;
  const int block =
      std::max(16, static_cast<int>(std::sqrt(static_cast<double>(m))));
  int scanned = 0;
  int best = -1;
  double best_red = -eligible_tol_;
  int pos = block_pos_;
  while (scanned < m) {
    int end = std::min(pos + block, m);
    for (; pos < end; ++pos, ++scanned) {
      if (basis_[pos]) continue;
      double red = arc_cost_[pos] - potential_all_[arc_from_[pos]] +
                   potential_all_[arc_to_[pos]];
      if (red < best_red) {
        best_red = red;
        best = pos;
      }
    }
    if (best >= 0) {
      block_pos_ = pos % m;
      return best;
    }
    if (pos >= m) pos = 0;
  }
  return -1;
}

int NetworkSimplex::entering_arc_bland() {
  for (int a = 0; a < num_real_arcs_; ++a) {
    if (basis_[a]) continue;
    double red = arc_cost_[a] - potential_all_[arc_from_[a]] +
                 potential_all_[arc_to_[a]];
    if (red < -eligible_tol_) return a;
  }
  return -1;
}

void NetworkSimplex::rebuild_tree() {
  const int total = num_nodes_ + 1;
  adjacency_.assign(total, {});
  const int m_all = static_cast<int>(arc_cost_.size());
  for (int a = 0; a < m_all; ++a) {
    if (!basis_[a]) continue;
    adjacency_[arc_from_[a]].push_back(a);
    adjacency_[arc_to_[a]].push_back(a);
  }
  parent_.assign(total, -1);
  parent_arc_.assign(total, -1);
  depth_.assign(total, 0);
  bfs_queue_.assign(1, root_);
  std::vector<char> seen(total, 0);
  seen[root_] = 1;
  for (size_t head = 0; head < bfs_queue_.size(); ++head) {
    int w = bfs_queue_[head];
    for (int a : adjacency_[w]) {
      int other = arc_from_[a] == w ? arc_to_[a] : arc_from_[a];
      if (seen[other]) continue;
      seen[other] = 1;
      parent_[other] = w;
      parent_arc_[other] = a;
      depth_[other] = depth_[w] + 1;
      bfs_queue_.push_back(other);
    }
  }
  if (static_cast<int>(bfs_queue_.size()) != total)
    throw InternalError("network simplex basis is not a spanning tree");
}

void NetworkSimplex::recompute_potentials() {
  const int total = num_nodes_ + 1;
  potential_all_.assign(total, 0.0);
  // bfs_queue_ lists the tree root-first, so parents are already set
  for (int w : bfs_queue_) {
    if (w == root_) continue;
    int a = parent_arc_[w];
    int p = parent_[w];
    // basic arcs have zero reduced cost: cost - pot[from] + pot[to] = 0
    if (arc_from_[a] == w)
      potential_all_[w] = arc_cost_[a] + potential_all_[p];
    else
      potential_all_[w] = potential_all_[p] - arc_cost_[a];
  }
}

}  // namespace tariffot
