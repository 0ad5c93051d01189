#include "tariffot/eulerian.hpp"

#include <algorithm>
#include <cmath>

#include "tariffot/errors.hpp"

namespace tariffot {

double EulerianPair::eta_total() const {
  double s = 0.0;
  for (const auto& [key, m] : eta) s += m;
  return s;
}

double EulerianPair::rho_layer_mass(int layer) const {
  if (layer < 0 || layer >= (int)rho.size()) return 0.0;
  double s = 0.0;
  for (const auto& [key, m] : rho[layer]) s += m;
  return s;
}

std::vector<double> EulerianPair::initial_marginal(int num_nodes) const {
  std::vector<double> marg(num_nodes, 0.0);
  if (!rho.empty())
    for (const auto& [key, m] : rho[0]) marg[key.first] += m;
  for (const auto& [key, m] : eta)
    if (key.first == 0) marg[key.second] += m;
  return marg;
}

std::vector<double> EulerianPair::eta_interior_marginal(
    const Grid& grid) const {
  std::vector<double> marg(grid.size(), 0.0);
  for (const auto& [key, m] : eta)
    if (grid.interior[key.second]) marg[key.second] += m;
  return marg;
}

EulerianPair lift_plan_to_eulerian(const PlanDecomposition& decomp,
                                   const CostSolver& solver) {
  const ProblemSpec& spec = solver.spec();
  const Grid& grid = spec.grid;
  EulerianPair pair;
  pair.layers = spec.t_steps;
  pair.dt = spec.discretization.dt;
  pair.rho.resize(pair.layers);
  pair.chi_plus.assign(grid.size(), 0.0);
  pair.chi_minus.assign(grid.size(), 0.0);

  std::vector<PlanEntry> atoms;
  atoms.reserve(decomp.ii.size() + decomp.ib.size() + decomp.bi.size());
  atoms.insert(atoms.end(), decomp.ii.begin(), decomp.ii.end());
  atoms.insert(atoms.end(), decomp.ib.begin(), decomp.ib.end());
  atoms.insert(atoms.end(), decomp.bi.begin(), decomp.bi.end());
  // grouping by source keeps the trajectory cache hot
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const PlanEntry& a, const PlanEntry& b) {
                     return a.src < b.src;
                   });

  for (const auto& atom : atoms) {
    Trajectory traj = solver.optimal_trajectory(atom.src, atom.dst);
    int stop = (int)traj.samples.size() - 1;
    for (int i = 0; i < stop; ++i) {
      const auto& s = traj.samples[i];
      pair.rho[i][{s.node, s.control}] += atom.mass;
    }
    pair.eta[{stop, traj.samples.back().node}] += atom.mass;
  }
  for (const auto& e : decomp.ib) pair.chi_minus[e.dst] += e.mass;
  for (const auto& e : decomp.bi) pair.chi_plus[e.src] += e.mass;

  // Eulerian objective evaluated on the fields themselves.
  const TimeExpandedGraph& graph = solver.graph();
  double run = 0.0;
  for (int l = 0; l < pair.layers; ++l)
    for (const auto& [key, m] : pair.rho[l])
      run += graph.weight(l, key.first, key.second) * m;
  double import_charge = 0.0;
  if (!pair.rho.empty()) {
    for (const auto& [key, m] : pair.rho[0])
      if (grid.is_reserve(key.first))
        import_charge += spec.tariffs.psi_plus[key.first] * m;
  }
  double export_credit = 0.0;
  for (const auto& [key, m] : pair.eta)
    if (grid.is_reserve(key.second))
      export_credit += spec.tariffs.psi_minus[key.second] * m;
  pair.objective = run + import_charge - export_credit;
  return pair;
}

std::vector<TestFunction> residual_test_basis(const ProblemSpec& spec) {
  const Grid& grid = spec.grid;
  const bool two_d = grid.dimension == 2;
  const double T = spec.t_max;
  double lo_x = grid.origin.x, hi_x = grid.origin.x + (grid.nx - 1) * grid.spacing;
  double lo_y = grid.origin.y, hi_y = grid.origin.y + (grid.ny - 1) * grid.spacing;

  std::vector<TestFunction> basis;
  auto poly = [&](const std::string& name,
                  std::function<double(double, Coord)> f, double d1,
                  double d2) {
    TestFunction tf;
    tf.name = name;
    tf.value = std::move(f);
    tf.d1_bound = d1;
    tf.d2_bound = d2;
    basis.push_back(std::move(tf));
  };
  poly("one", [](double, Coord) { return 1.0; }, 0.0, 0.0);
  poly("t", [](double t, Coord) { return t; }, 1.0, 0.0);
  poly("x", [](double, Coord p) { return p.x; }, 1.0, 0.0);
  poly("t*x", [](double t, Coord p) { return t * p.x; },
       std::max(T, std::abs(hi_x) + std::abs(lo_x)), 1.0);
  poly("x^2", [](double, Coord p) { return p.x * p.x; },
       2.0 * (std::abs(hi_x) + std::abs(lo_x)), 2.0);
  poly("t^2", [](double t, Coord) { return t * t; }, 2.0 * T, 2.0);
  if (two_d) {
    poly("y", [](double, Coord p) { return p.y; }, 1.0, 0.0);
    poly("x*y", [](double, Coord p) { return p.x * p.y; },
         std::abs(hi_x) + std::abs(lo_x) + std::abs(hi_y) + std::abs(lo_y),
         1.0);
    poly("t*y", [](double t, Coord p) { return t * p.y; },
         std::max(T, std::abs(hi_y) + std::abs(lo_y)), 1.0);
  }

  // tensor hat bumps on a fixed 3 x 3 (x 3) lattice
  auto hat1 = [](double v, double c, double w) {
    return std::max(0.0, 1.0 - std::abs(v - c) / w);
  };
  double wt = T / 4.0;
  double wx = (hi_x - lo_x) / 4.0;
  double wy = two_d ? (hi_y - lo_y) / 4.0 : 1.0;
  for (int it = 1; it <= 3; ++it) {
    for (int ix = 1; ix <= 3; ++ix) {
      double ct = it * T / 4.0;
      double cx = lo_x + ix * (hi_x - lo_x) / 4.0;
      if (!two_d) {
        TestFunction f;
        f.name = "hat(t" + std::to_string(it) + ",x" + std::to_string(ix) + ")";
        f.value = [=](double t, Coord p) {
          return hat1(t, ct, wt) * hat1(p.x, cx, wx);
        };
        f.d1_bound = 1.0 / std::min(wt, wx);
        f.d2_bound = 2.0 / (wt * wx) + 2.0 / (wx * wx);
        basis.push_back(std::move(f));
      } else {
        double cy = lo_y + 2 * (hi_y - lo_y) / 4.0;  // mid-plane bump
        TestFunction f;
        f.name = "hat(t" + std::to_string(it) + ",x" + std::to_string(ix) +
                 ",ymid)";
        f.value = [=](double t, Coord p) {
          return hat1(t, ct, wt) * hat1(p.x, cx, wx) * hat1(p.y, cy, wy);
        };
        f.d1_bound = 1.0 / std::min({wt, wx, wy});
        f.d2_bound = 2.0 / (wt * std::min(wx, wy)) +
                     2.0 / (std::min(wx, wy) * std::min(wx, wy));
        basis.push_back(std::move(f));
      }
    }
  }
  return basis;
}

bool WeakResidualReport::within_bounds() const {
  return std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) {
    return std::abs(e.residual) <= e.bound;
  });
}

WeakResidualReport continuity_residual(const EulerianPair& pair,
                                       const ProblemSpec& spec,
                                       const DiscreteMeasure& mu_plus) {
  const Grid& grid = spec.grid;
  const DynamicsSpec& dyn = spec.dynamics;
  const double dt = pair.dt;
  const double h = grid.spacing;
  auto basis = residual_test_basis(spec);

  double total_mass = mu_plus.total();
  for (double v : pair.chi_plus) total_mass += v;

  // worst per-step snap displacement rate, zero on aligned setups
  double snap_rate = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    for (int u = 0; u < dyn.num_controls(); ++u) {
      Coord exact =
          grid.nodes[i] + dt * dyn.velocity(dt / 2.0, grid.nodes[i], u);
      Coord snapped = grid.nodes[grid.nearest_node(exact)];
      snap_rate = std::max(snap_rate, distance(snapped, exact) / dt);
    }
  }

  WeakResidualReport report;
  for (const auto& tf : basis) {
    double acc = 0.0;
    for (int l = 0; l < pair.layers; ++l) {
      double t = l * dt;
      for (const auto& [key, m] : pair.rho[l]) {
        auto [node, u] = key;
        Coord x = grid.nodes[node];
        Coord k = dyn.velocity(t, x, u);
        double dt_term = (tf.value(t + dt, x) - tf.value(t, x)) / dt;
        // upwind differences along the motion direction
        double adv = 0.0;
        if (k.x != 0.0) {
          double s = k.x > 0 ? h : -h;
          adv += k.x * (tf.value(t, {x.x + s, x.y}) - tf.value(t, x)) / s;
        }
        if (k.y != 0.0) {
          double s = k.y > 0 ? h : -h;
          adv += k.y * (tf.value(t, {x.x, x.y + s}) - tf.value(t, x)) / s;
        }
        acc += (dt_term + adv) * m * dt;
      }
    }
    for (const auto& [key, m] : pair.eta)
      acc -= tf.value(key.first * dt, grid.nodes[key.second]) * m;
    for (int i = 0; i < grid.size(); ++i) {
      double m0 = mu_plus.weights[i] + pair.chi_plus[i];
      if (m0 != 0.0) acc += tf.value(0.0, grid.nodes[i]) * m0;
    }

    double kappa = std::max(1.0, dyn.speed_bound);
    double bound = total_mass * spec.t_max *
                       (tf.d2_bound * kappa * kappa * 2.0 * (dt + h) +
                        tf.d1_bound * snap_rate) +
                   1e-12 * (1.0 + total_mass);
    report.entries.push_back({tf.name, acc, bound});
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(acc));
  }
  report.max_normalized =
      total_mass > 0 ? report.max_abs_residual / total_mass : 0.0;
  return report;
}

WeakResidualReport stopping_marginal_residual(const EulerianPair& pair,
                                              const ProblemSpec& spec,
                                              const DiscreteMeasure& mu_minus) {
  const Grid& grid = spec.grid;
  auto marg = pair.eta_interior_marginal(grid);
  double total = mu_minus.total();

  WeakResidualReport report;
  double worst = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(marg[i] - mu_minus.weights[i]));
  report.entries.push_back(
      {"node-wise marginal", worst, 1e-12 * (1.0 + total)});

  auto basis = residual_test_basis(spec);
  for (const auto& tf : basis) {
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      acc += tf.value(0.0, grid.nodes[i]) *
             (marg[i] - mu_minus.weights[i]);
    report.entries.push_back({tf.name, acc, 1e-11 * (1.0 + total)});
  }
  for (const auto& e : report.entries)
    report.max_abs_residual = std::max(report.max_abs_residual,
                                       std::abs(e.residual));
  report.max_normalized = total > 0 ? report.max_abs_residual / total : 0.0;
  return report;
}

}  // namespace tariffot
