#include "tariffot/time_expanded.hpp"

#include <cmath>

#include "tariffot/errors.hpp"

namespace tariffot {

TimeExpandedGraph::TimeExpandedGraph(const ProblemSpec& spec) {
  if (!spec.finalized())
    throw ParameterError("time-expanded graph needs a finalized spec");
  const Grid& grid = spec.grid;
  const DynamicsSpec& dyn = spec.dynamics;
  n_ = grid.size();
  nu_ = dyn.num_controls();
  layers_ = spec.t_steps;
  dt_ = spec.discretization.dt;
  k_static_ = dyn.velocity_time_independent;
  L_static_ = dyn.run_cost_time_independent;

  auto fill_next = [&](double t, std::vector<int32_t>* table) {
    table->resize((size_t)n_ * nu_);
    for (int i = 0; i < n_; ++i) {
      for (int u = 0; u < nu_; ++u) {
        Coord target = grid.nodes[i] + dt_ * dyn.velocity(t, grid.nodes[i], u);
        int j = grid.nearest_node(target);
        (*table)[(size_t)i * nu_ + u] = j;
        double step = distance(grid.nodes[i], grid.nodes[j]);
        if (step > max_step_length_) max_step_length_ = step;
      }
    }
  };
  auto fill_weight = [&](double t_mid, std::vector<double>* table) {
    table->resize((size_t)n_ * nu_);
    for (int i = 0; i < n_; ++i)
      for (int u = 0; u < nu_; ++u)
        (*table)[(size_t)i * nu_ + u] =
            dyn.run_cost(t_mid, grid.nodes[i], u) * dt_;
  };

  if (k_static_) {
    fill_next(dt_ / 2.0, &next_static_);
  } else {
    next_by_layer_.resize(layers_);
    for (int l = 0; l < layers_; ++l) fill_next(l * dt_, &next_by_layer_[l]);
  }
  if (L_static_) {
    fill_weight(dt_ / 2.0, &weight_static_);
  } else {
    weight_by_layer_.resize(layers_);
    for (int l = 0; l < layers_; ++l)
      fill_weight(l * dt_ + dt_ / 2.0, &weight_by_layer_[l]);
  }

  // Snap consistency: one step never jumps further than kappa*dt + h.
  double limit = dyn.speed_bound * dt_ + grid.spacing;
  if (max_step_length_ > limit + 1e-12)
    throw InternalError("snap step length " + std::to_string(max_step_length_) +
                        " exceeds kappa*dt + h");
}

}  // namespace tariffot
