#include "tariffot/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tariffot/cost.hpp"
#include "tariffot/errors.hpp"

namespace tariffot {

void ProblemSpec::finalize() {
  if (grid.size() == 0) throw ParameterError("grid is empty");
  if (discretization.dt <= 0.0) throw ParameterError("dt must be positive");
  if (discretization.t_max_factor < 1.0)
    throw ParameterError("t_max_factor must be >= 1");
  if ((int)mu_plus.weights.size() != grid.size() ||
      (int)mu_minus.weights.size() != grid.size())
    throw ParameterError("measure size does not match the grid");
  if ((int)tariffs.psi_plus.size() != grid.size() ||
      (int)tariffs.psi_minus.size() != grid.size())
    throw ParameterError("tariff size does not match the grid");
  if (dynamics.controls.empty())
    throw ParameterError("control set must be nonempty");

  double diam = grid.diameter();
  delta_step = default_reach_delta(dynamics, diam);
  // Worst pair distance is the diameter; reach_time_bound is linear in it.
  double worst = reach_time_bound({0, 0}, {diam, 0}, dynamics, delta_step,
                                  diam);
  reach_coefficient = diam > 0 ? worst / diam : 0.0;
  double horizon = discretization.t_max_factor * worst;
  t_steps = std::max(1, (int)std::ceil(horizon / discretization.dt - 1e-12));
  t_max = t_steps * discretization.dt;

  if (dynamics.rate_range) {
    auto [lo, hi] = dynamics.rate_range(discretization.dt / 2.0, t_max);
    dynamics.rate_lower = lo;
    dynamics.rate_upper = hi;
  }
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Evenly spaced sample layers, always including the first and last.
std::vector<double> time_samples(const ProblemSpec& spec, int max_count) {
  std::vector<double> ts;
  double dt = spec.discretization.dt;
  int layers = spec.t_steps;
  int stride = std::max(1, layers / max_count);
  for (int i = 0; i < layers; i += stride) ts.push_back(i * dt + dt / 2.0);
  ts.push_back((layers - 1) * dt + dt / 2.0);
  return ts;
}

std::vector<int> node_samples(const Grid& grid, int max_count) {
  std::vector<int> ns;
  int stride = std::max(1, grid.size() / max_count);
  for (int i = 0; i < grid.size(); i += stride) ns.push_back(i);
  ns.push_back(grid.size() - 1);
  return ns;
}

std::vector<Coord> probe_directions(int dimension) {
  if (dimension == 1) return {{1, 0}, {-1, 0}};
  std::vector<Coord> dirs;
  for (int i = 0; i < 8; ++i) {
    double a = i * (3.14159265358979323846 / 4.0);
    dirs.push_back({std::cos(a), std::sin(a)});
  }
  return dirs;
}

}  // namespace

ValidationReport validate_problem(const ProblemSpec& spec,
                                  const CostMatrix* cost) {
  if (!spec.finalized())
    throw ParameterError("validate_problem needs a finalized spec");
  ValidationReport report;
  const auto& dyn = spec.dynamics;
  const auto& grid = spec.grid;
  auto ts = time_samples(spec, 24);
  auto ns = node_samples(grid, 48);
  int nu = dyn.num_controls();

  auto add = [&](const std::string& name, bool pass,
                 const std::string& detail) {
    report.checks.push_back({name, pass, detail});
  };

  // H0: finite nonempty control set (compactness holds by construction).
  add("H0 control set", nu > 0, "finite set of " + std::to_string(nu));

  // H1: |k| <= kappa.
  {
    bool ok = true;
    std::string detail;
    for (double t : ts) {
      for (int i : ns) {
        for (int u = 0; u < nu && ok; ++u) {
          double s = norm(dyn.velocity(t, grid.nodes[i], u));
          if (s > dyn.speed_bound + 1e-12) {
            ok = false;
            detail = "sample (t=" + fmt(t) + ", node " + grid.node_label(i) +
                     ", u=" + std::to_string(u) + "): |k|=" + fmt(s) +
                     " > kappa=" + fmt(dyn.speed_bound);
          }
        }
      }
    }
    add("H1 speed bound", ok, detail);
  }

  // H2: Lipschitz bound of k along neighboring samples.
  {
    bool ok = true;
    std::string detail;
    double h = grid.spacing;
    double dt = spec.discretization.dt;
    for (size_t si = 0; si + 1 < ts.size() && ok; ++si) {
      for (int i : ns) {
        for (int u = 0; u < nu && ok; ++u) {
          double d = norm(dyn.velocity(ts[si], grid.nodes[i], u) -
                          dyn.velocity(ts[si + 1], grid.nodes[i], u));
          double allowed = dyn.lip_k * std::abs(ts[si + 1] - ts[si]) + 1e-12;
          if (d > allowed) {
            ok = false;
            detail = "time step at node " + grid.node_label(i) +
                     ": |dk|=" + fmt(d) + " > C*dt=" + fmt(allowed);
          }
        }
      }
    }
    for (int i : ns) {
      if (!ok) break;
      int j = (i + 1 < grid.size()) ? i + 1 : i - 1;
      double dist_ij = distance(grid.nodes[i], grid.nodes[j]);
      if (dist_ij <= 0 || dist_ij > 2 * h) continue;
      for (int u = 0; u < nu && ok; ++u) {
        double d = norm(dyn.velocity(ts[0], grid.nodes[i], u) -
                        dyn.velocity(ts[0], grid.nodes[j], u));
        if (d > dyn.lip_k * dist_ij + 1e-12) {
          ok = false;
          detail = "neighbors " + grid.node_label(i) + "," +
                   grid.node_label(j) + ": |dk|=" + fmt(d);
        }
      }
    }
    add("H2 k Lipschitz", ok, detail);
  }

  // H3: inward cone — for every sampled x and probe direction v some
  // control satisfies k.v <= -alpha|v|.
  {
    bool ok = true;
    std::string detail;
    auto dirs = probe_directions(grid.dimension);
    for (int i : ns) {
      for (const Coord& v : dirs) {
        bool found = false;
        for (int u = 0; u < nu && !found; ++u) {
          double proj = dot(dyn.velocity(ts[0], grid.nodes[i], u), v);
          if (proj <= -dyn.cone_alpha * norm(v) + 1e-12) found = true;
        }
        if (!found) {
          ok = false;
          detail = "node " + grid.node_label(i) + ", direction (" +
                   fmt(v.x) + "," + fmt(v.y) + "): no control with k.v <= -" +
                   fmt(dyn.cone_alpha) + "|v|";
          break;
        }
      }
      if (!ok) break;
    }
    add("H3 inward cone", ok, detail);
  }

  // H4: beta2 <= L <= beta1 with beta2 > 0 on sampled midpoints.
  {
    bool ok = dyn.rate_lower > 0.0;
    std::string detail =
        ok ? "" : "beta2=" + fmt(dyn.rate_lower) + " must be > 0";
    for (double t : ts) {
      if (!ok) break;
      for (int i : ns) {
        for (int u = 0; u < nu && ok; ++u) {
          double L = dyn.run_cost(t, grid.nodes[i], u);
          if (L < dyn.rate_lower - 1e-12 || L > dyn.rate_upper + 1e-12) {
            ok = false;
            detail = "L(t=" + fmt(t) + ", node " + grid.node_label(i) +
                     ", u=" + std::to_string(u) + ")=" + fmt(L) +
                     " outside [" + fmt(dyn.rate_lower) + "," +
                     fmt(dyn.rate_upper) + "]";
          }
        }
      }
    }
    add("H4 Lagrangian bounds", ok, detail);
  }

  // H5: Lipschitz bound of L in x along neighbors.
  {
    bool ok = true;
    std::string detail;
    for (int i : ns) {
      int j = (i + 1 < grid.size()) ? i + 1 : i - 1;
      double dist_ij = distance(grid.nodes[i], grid.nodes[j]);
      if (dist_ij <= 0) continue;
      for (int u = 0; u < nu && ok; ++u) {
        double d = std::abs(dyn.run_cost(ts[0], grid.nodes[i], u) -
                            dyn.run_cost(ts[0], grid.nodes[j], u));
        if (d > dyn.lip_L * dist_ij + 1e-12) {
          ok = false;
          detail = "neighbors " + grid.node_label(i) + "," +
                   grid.node_label(j) + ": |dL|=" + fmt(d) + " > C*h";
        }
      }
    }
    add("H5 L Lipschitz", ok, detail);
  }

  // H6 cannot be sampled for a finite control set; the descriptor declares
  // whether the relaxed velocity-cost set is convex.
  add("H6 velocity-cost convexity", dyn.velocity_cost_set_convex,
      dyn.velocity_cost_set_convex ? "declared by dynamics descriptor"
                                   : "descriptor does not declare convexity");

  // H9: time-independent k.
  {
    bool ok = true;
    std::string detail;
    if (dyn.velocity_time_independent) {
      for (double t : ts) {
        for (int i : ns) {
          for (int u = 0; u < nu && ok; ++u) {
            double d = norm(dyn.velocity(t, grid.nodes[i], u) -
                            dyn.velocity(ts[0], grid.nodes[i], u));
            if (d > 1e-12) {
              ok = false;
              detail = "k varies in t at node " + grid.node_label(i);
            }
          }
        }
        if (!ok) break;
      }
    } else {
      ok = false;
      detail = "descriptor declares time-dependent k";
    }
    add("H9 dk/dt = 0", ok, detail);
  }

  // H10: declared sign of dL/dt against sampled differences.
  {
    bool ok = true;
    std::string detail;
    if (dyn.time_monotonicity == TimeMonotonicity::none) {
      detail = "no monotonicity declared (free-boundary ops unavailable)";
    } else {
      double sign =
          dyn.time_monotonicity == TimeMonotonicity::increasing ? 1.0 : -1.0;
      for (size_t si = 0; si + 1 < ts.size() && ok; ++si) {
        for (int i : ns) {
          for (int u = 0; u < nu && ok; ++u) {
            double d = dyn.run_cost(ts[si + 1], grid.nodes[i], u) -
                       dyn.run_cost(ts[si], grid.nodes[i], u);
            if (sign * d < -1e-12) {
              ok = false;
              detail = "dL has the wrong sign near t=" + fmt(ts[si]);
            }
          }
        }
      }
    }
    add("H10 dL/dt monotone", ok, detail);
  }

  // Discrete motion: the snap rule must move every interior sample under
  // at least one control, otherwise dt is too small relative to h.
  {
    bool ok = true;
    std::string detail;
    double dt = spec.discretization.dt;
    for (int i : ns) {
      if (!grid.interior[i]) continue;
      bool moves = false;
      for (int u = 0; u < nu && !moves; ++u) {
        Coord target =
            grid.nodes[i] + dt * dyn.velocity(dt / 2.0, grid.nodes[i], u);
        if (grid.nearest_node(target) != i) moves = true;
      }
      if (!moves) {
        ok = false;
        detail = "node " + grid.node_label(i) +
                 " cannot move under any control (dt too small vs h?)";
        break;
      }
    }
    add("discrete motion", ok, detail);
  }

  // No-arbitrage, only when a cost matrix is available.
  if (cost != nullptr) {
    bool ok = true;
    std::string detail;
    double worst = 0.0;
    int wx = -1, wy = -1;
    for (int x : spec.tariffs.import_nodes(grid)) {
      for (int y : spec.tariffs.export_nodes(grid)) {
        double margin = spec.tariffs.psi_minus[y] - spec.tariffs.psi_plus[x] -
                        cost->cost(x, y);
        if (margin > worst) {
          worst = margin;
          wx = x;
          wy = y;
        }
      }
    }
    if (worst > 1e-12) {
      ok = false;
      detail = "psi_minus(" + grid.node_label(wy) + ") - psi_plus(" +
               grid.node_label(wx) + ") exceeds c by " + fmt(worst);
    }
    add("no-arbitrage", ok, detail);
  } else {
    add("no-arbitrage", true, "deferred: no cost matrix supplied");
  }

  return report;
}

}  // namespace tariffot
