#include "tariffot/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "tariffot/errors.hpp"
#include "tariffot/parallel.hpp"

namespace tariffot {

namespace {
constexpr double kUnreached = std::numeric_limits<double>::infinity();
}

double default_reach_delta(const DynamicsSpec& dyn, double domain_diameter) {
  double denom = dyn.speed_bound * (dyn.speed_bound +
                                    dyn.lip_k * domain_diameter);
  if (denom <= 0.0)
    throw ParameterError("speed bound must be positive for the reach bound");
  return dyn.cone_alpha / (2.0 * denom);
}

double reach_time_bound(Coord x, Coord y, const DynamicsSpec& dyn,
                        double delta, double domain_diameter) {
  double d = distance(x, y);
  if (d == 0.0) return 0.0;
  double reach_rate =
      dyn.speed_bound * (dyn.speed_bound + dyn.lip_k * domain_diameter);
  double theta_sq = 1.0 + 2.0 * delta * (-dyn.cone_alpha + delta * reach_rate);
  if (delta <= 0.0 || theta_sq >= 1.0) {
    double delta_max = dyn.cone_alpha / reach_rate;
    throw ParameterError(
        "steering step delta=" + std::to_string(delta) +
        " gives theta >= 1; admissible range is (0, " +
        std::to_string(delta_max) + ")");
  }
  double theta = std::sqrt(std::max(0.0, theta_sq));
  return delta / (1.0 - theta) * d;
}

/// Labels of one single-source search; predecessors are only filled when a
/// trajectory will be reconstructed from them.
struct CostSolver::RowSearch {
  // full time-expanded sweep
  std::vector<double> dist;          // (layers+1) x n
  std::vector<int32_t> pred_node;    // entering predecessor per state
  std::vector<int8_t> pred_control;
  // collapsed spatial search
  std::vector<double> sdist;
  std::vector<int32_t> ssteps;
  std::vector<int32_t> spred_node;
  std::vector<int8_t> spred_control;
  bool with_pred = false;
  bool collapsed = false;
};

CostSolver::CostSolver(const ProblemSpec& spec)
    : spec_(&spec), graph_(spec) {
  const int n = graph_.num_nodes();
  collapsed_ = graph_.transitions_static() && graph_.weights_static();
  matrix_.n = n;
  matrix_.dt = graph_.dt();
  matrix_.c.assign((size_t)n * n, kUnreached);
  matrix_.tau_layer.assign((size_t)n * n, -1);

  std::string first_failure;
  std::mutex failure_mutex;
  parallel_for(n, [&](int source) {
    RowSearch row;
    if (collapsed_) {
      solve_row_collapsed(source, &row);
      for (int y = 0; y < n; ++y) {
        matrix_.c[(size_t)source * n + y] = row.sdist[y];
        matrix_.tau_layer[(size_t)source * n + y] = row.ssteps[y];
      }
    } else {
      solve_row(source, &row);
      const int layers = graph_.num_layers();
      for (int y = 0; y < n; ++y) {
        double best = kUnreached;
        int best_layer = -1;
        for (int l = 0; l <= layers; ++l) {
          double d = row.dist[(size_t)l * n + y];
          if (d < best) {
            best = d;
            best_layer = l;
          }
        }
        matrix_.c[(size_t)source * n + y] = best;
        matrix_.tau_layer[(size_t)source * n + y] = best_layer;
      }
    }
    for (int y = 0; y < n; ++y) {
      if (matrix_.c[(size_t)source * n + y] == kUnreached) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (first_failure.empty())
          first_failure = "pair (" + spec.grid.node_label(source) + " -> " +
                          spec.grid.node_label(y) +
                          ") unreachable within t_max; check the inward-cone "
                          "condition or enlarge t_max_factor";
        break;
      }
    }
  });
  if (!first_failure.empty()) throw Error(first_failure);
}

CostSolver::~CostSolver() = default;

void CostSolver::solve_row(int source, RowSearch* row) const {
  const int n = graph_.num_nodes();
  const int nu = graph_.num_controls();
  const int layers = graph_.num_layers();
  row->collapsed = false;
  row->dist.assign((size_t)(layers + 1) * n, kUnreached);
  if (row->with_pred) {
    row->pred_node.assign((size_t)(layers + 1) * n, -1);
    row->pred_control.assign((size_t)(layers + 1) * n, -1);
  }
  row->dist[source] = 0.0;
  for (int l = 0; l < layers; ++l) {
    const double* cur = &row->dist[(size_t)l * n];
    double* nxt = &row->dist[(size_t)(l + 1) * n];
    for (int i = 0; i < n; ++i) {
      double d = cur[i];
      if (d == kUnreached) continue;
      for (int u = 0; u < nu; ++u) {
        int j = graph_.next(l, i, u);
        double nd = d + graph_.weight(l, i, u);
        size_t state = (size_t)(l + 1) * n + j;
        if (nd < nxt[j]) {
          nxt[j] = nd;
          if (row->with_pred) {
            row->pred_node[state] = i;
            row->pred_control[state] = (int8_t)u;
          }
        } else if (row->with_pred && nd == nxt[j]) {
          // ties break on (cost, predecessor node, control)
          if (i < row->pred_node[state] ||
              (i == row->pred_node[state] && u < row->pred_control[state])) {
            row->pred_node[state] = i;
            row->pred_control[state] = (int8_t)u;
          }
        }
      }
    }
  }
}

void CostSolver::solve_row_collapsed(int source, RowSearch* row) const {
  const int n = graph_.num_nodes();
  const int nu = graph_.num_controls();
  const int layers = graph_.num_layers();
  row->collapsed = true;
  row->sdist.assign(n, kUnreached);
  row->ssteps.assign(n, -1);
  row->spred_node.assign(n, -1);
  row->spred_control.assign(n, -1);
  row->sdist[source] = 0.0;
  row->ssteps[source] = 0;

  using Label = std::tuple<double, int32_t, int32_t>;  // cost, steps, node
  std::priority_queue<Label, std::vector<Label>, std::greater<Label>> heap;
  heap.push({0.0, 0, source});
  while (!heap.empty()) {
    auto [d, steps, i] = heap.top();
    heap.pop();
    if (d != row->sdist[i] || steps != row->ssteps[i]) continue;
    for (int u = 0; u < nu; ++u) {
      int j = graph_.next(0, i, u);
      double nd = d + graph_.weight(0, i, u);
      int32_t nsteps = steps + 1;
      bool better = nd < row->sdist[j] ||
                    (nd == row->sdist[j] && nsteps < row->ssteps[j]);
      bool tie = nd == row->sdist[j] && nsteps == row->ssteps[j];
      if (better) {
        row->sdist[j] = nd;
        row->ssteps[j] = nsteps;
        row->spred_node[j] = i;
        row->spred_control[j] = (int8_t)u;
        heap.push({nd, nsteps, j});
      } else if (tie && (i < row->spred_node[j] ||
                         (i == row->spred_node[j] &&
                          u < row->spred_control[j]))) {
        row->spred_node[j] = i;
        row->spred_control[j] = (int8_t)u;
      }
    }
  }
  // Paths longer than the horizon would be invisible to the layered sweep.
  for (int y = 0; y < n; ++y) {
    if (row->ssteps[y] > layers) {
      row->sdist[y] = kUnreached;
      row->ssteps[y] = -1;
    }
  }
}

Trajectory CostSolver::optimal_trajectory(int x, int y) const {
  const int n = graph_.num_nodes();
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw ParameterError("trajectory endpoints out of range");
  if (matrix_.c[(size_t)x * n + y] == kUnreached)
    throw Error("pair (" + spec_->grid.node_label(x) + " -> " +
                spec_->grid.node_label(y) + ") is unreachable");

  std::shared_ptr<RowSearch> row;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cached_source_ == x && cached_row_ && cached_row_->with_pred) {
      row = cached_row_;
    }
  }
  if (!row) {
    row = std::make_shared<RowSearch>();
    row->with_pred = true;
    if (collapsed_)
      solve_row_collapsed(x, row.get());
    else
      solve_row(x, row.get());
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cached_source_ = x;
    cached_row_ = row;
  }

  const double dt = graph_.dt();
  Trajectory traj;
  traj.cost = matrix_.c[(size_t)x * n + y];
  int stop_layer = matrix_.tau_layer[(size_t)x * n + y];
  traj.stop_time = stop_layer * dt;

  std::vector<std::pair<int, int>> rev;  // (node, control entering it)
  if (collapsed_) {
    int v = y;
    int guard = row->ssteps[y];
    while (v != x) {
      if (guard-- < 0)
        throw InternalError("trajectory predecessor chain is inconsistent");
      rev.push_back({v, row->spred_control[v]});
      v = row->spred_node[v];
    }
    rev.push_back({x, -1});
  } else {
    int v = y;
    for (int l = stop_layer; l > 0; --l) {
      rev.push_back({v, row->pred_control[(size_t)l * n + v]});
      v = row->pred_node[(size_t)l * n + v];
    }
    rev.push_back({v, -1});
  }
  if (rev.back().first != x)
    throw InternalError("trajectory reconstruction did not reach the source");

  traj.samples.resize(rev.size());
  for (size_t i = 0; i < rev.size(); ++i) {
    size_t ri = rev.size() - 1 - i;
    traj.samples[i].t = (double)i * dt;
    traj.samples[i].node = rev[ri].first;
    // control taken FROM this sample = control entering the next one
    traj.samples[i].control =
        i + 1 < rev.size() ? rev[rev.size() - 2 - i].second : -1;
  }
  return traj;
}

double CostSolver::cost_from_layer(int start_layer, int x, int y) const {
  const int n = graph_.num_nodes();
  const int nu = graph_.num_controls();
  const int layers = graph_.num_layers();
  if (start_layer < 0 || start_layer > layers)
    throw ParameterError("start layer out of range");
  if (collapsed_) {
    // time plays no role; reuse the spatial search but cap remaining steps
    RowSearch row;
    solve_row_collapsed(x, &row);
    if (row.ssteps[y] >= 0 && row.ssteps[y] <= layers - start_layer)
      return row.sdist[y];
    return kUnreached;
  }
  std::vector<double> cur(n, kUnreached), nxt(n);
  cur[x] = 0.0;
  double best = cur[y];
  for (int l = start_layer; l < layers; ++l) {
    std::fill(nxt.begin(), nxt.end(), kUnreached);
    for (int i = 0; i < n; ++i) {
      if (cur[i] == kUnreached) continue;
      for (int u = 0; u < nu; ++u) {
        int j = graph_.next(l, i, u);
        double nd = cur[i] + graph_.weight(l, i, u);
        if (nd < nxt[j]) nxt[j] = nd;
      }
    }
    cur.swap(nxt);
    best = std::min(best, cur[y]);
  }
  return best;
}

double CostSolver::reach_bound(int x, int y) const {
  return reach_time_bound(spec_->grid.nodes[x], spec_->grid.nodes[y],
                          spec_->dynamics, spec_->delta_step,
                          spec_->grid.diameter());
}

LipschitzReport CostSolver::check_lipschitz() const {
  const Grid& grid = spec_->grid;
  const int n = grid.size();
  LipschitzReport rep;
  auto neighbor_pairs = [&]() {
    std::vector<std::pair<int, int>> pairs;
    for (int iy = 0; iy < grid.ny; ++iy) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        int v = iy * grid.nx + ix;
        if (ix + 1 < grid.nx) pairs.push_back({v, v + 1});
        if (iy + 1 < grid.ny) pairs.push_back({v, v + grid.nx});
      }
    }
    return pairs;
  }();
  double h = grid.spacing;
  for (auto [a, b] : neighbor_pairs) {
    for (int y = 0; y < n; ++y) {
      double d = std::abs(matrix_.cost(a, y) - matrix_.cost(b, y)) / h;
      rep.empirical_source_side = std::max(rep.empirical_source_side, d);
    }
    for (int x = 0; x < n; ++x) {
      double d = std::abs(matrix_.cost(x, a) - matrix_.cost(x, b)) / h;
      rep.empirical_target_side = std::max(rep.empirical_target_side, d);
    }
  }
  // Steering-leg bound plus Gronwall drift of perturbed starts, with one
  // snap step of slack.
  const DynamicsSpec& dyn = spec_->dynamics;
  double steering = dyn.rate_upper * spec_->reach_coefficient;
  double drift = dyn.lip_L * spec_->t_max;
  double growth = std::exp(dyn.lip_k * spec_->t_max);
  double snap_slack =
      dyn.rate_upper * (spec_->discretization.dt / h + 1.0);
  rep.theoretical_bound = (steering + drift) * growth + snap_slack;
  rep.within_bound =
      std::max(rep.empirical_source_side, rep.empirical_target_side) <=
      rep.theoretical_bound;
  return rep;
}

CostMatrix compute_cost_matrix(const ProblemSpec& spec) {
  return CostSolver(spec).matrix();
}

}  // namespace tariffot
