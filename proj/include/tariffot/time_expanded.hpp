#pragma once

#include <cstdint>
#include <vector>

#include "tariffot/problem.hpp"

namespace tariffot {

/// Discrete control graph shared by the cost search and the value-function
/// sweep. Layer i covers [i*dt, (i+1)*dt); taking control u from node v in
/// layer i moves to the grid node nearest to v + k(t_i, v, u)*dt at weight
/// L(t_i + dt/2, v, u)*dt. Transition and weight tables are precomputed;
/// time-independent k or L collapses the respective table to one layer.
///
/// Both consumers must see bit-identical arcs, otherwise the exact
/// complementarity between the transport dual and the value function breaks.
class TimeExpandedGraph {
 public:
  explicit TimeExpandedGraph(const ProblemSpec& spec);

  int num_nodes() const { return n_; }
  int num_controls() const { return nu_; }
  int num_layers() const { return layers_; }  // arc layers 0..layers_-1
  double dt() const { return dt_; }

  int next(int layer, int node, int u) const {
    const auto& t = k_static_ ? next_static_ : next_by_layer_[layer];
    return t[node * nu_ + u];
  }
  double weight(int layer, int node, int u) const {
    const auto& t = L_static_ ? weight_static_ : weight_by_layer_[layer];
    return t[node * nu_ + u];
  }
  bool transitions_static() const { return k_static_; }
  bool weights_static() const { return L_static_; }

  /// Largest |snap(v + k dt) - v| over all arcs; must stay below
  /// kappa*dt + h.
  double max_step_length() const { return max_step_length_; }

 private:
  int n_ = 0;
  int nu_ = 0;
  int layers_ = 0;
  double dt_ = 0.0;
  bool k_static_ = false;
  bool L_static_ = false;
  double max_step_length_ = 0.0;
  std::vector<int32_t> next_static_;
  std::vector<double> weight_static_;
  std::vector<std::vector<int32_t>> next_by_layer_;
  std::vector<std::vector<double>> weight_by_layer_;
};

}  // namespace tariffot
