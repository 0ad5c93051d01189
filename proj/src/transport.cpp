#include "tariffot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tariffot/errors.hpp"
#include "tariffot/network_simplex.hpp"

namespace tariffot {

double TransportPlan::total_imported() const {
  double s = 0.0;
  for (double v : xi_plus) s += v;
  return s;
}

double TransportPlan::total_exported() const {
  double s = 0.0;
  for (double v : xi_minus) s += v;
  return s;
}

double DualPotentials::objective(const DiscreteMeasure& mu_plus,
                                 const DiscreteMeasure& mu_minus) const {
  double s = 0.0;
  for (size_t i = 0; i < phi_minus.size(); ++i)
    s += phi_minus[i] * mu_minus.weights[i];
  for (size_t i = 0; i < phi_plus.size(); ++i)
    s -= phi_plus[i] * mu_plus.weights[i];
  return s;
}

ArbitrageCheck check_no_arbitrage(const CostMatrix& cost,
                                  const ProblemSpec& spec, double tol) {
  ArbitrageCheck res;
  auto imports = spec.tariffs.import_nodes(spec.grid);
  auto exports = spec.tariffs.export_nodes(spec.grid);
  for (int x : imports) {
    for (int y : exports) {
      double violation = spec.tariffs.psi_minus[y] - spec.tariffs.psi_plus[x] -
                         cost.cost(x, y);
      if (violation > res.worst_violation) {
        res.worst_violation = violation;
        res.worst_import_node = x;
        res.worst_export_node = y;
      }
    }
  }
  res.ok = res.worst_violation <= tol;
  return res;
}

namespace {

/// Node/arc layout of the reserve-augmented transportation network.
struct FlowLayout {
  std::vector<int> sources;  // interior nodes with mu_plus mass
  std::vector<int> sinks;    // interior nodes with mu_minus mass
  std::vector<int> imports;  // K+ nodes with finite psi_plus
  std::vector<int> exports;  // K- nodes with finite psi_minus
  int id_source(int i) const { return i; }
  int id_sink(int i) const { return (int)sources.size() + i; }
  int id_import(int i) const {
    return (int)(sources.size() + sinks.size()) + i;
  }
  int id_export(int i) const {
    return (int)(sources.size() + sinks.size() + imports.size()) + i;
  }
  int id_import_pool() const {
    return (int)(sources.size() + sinks.size() + imports.size() +
                 exports.size());
  }
  int id_export_pool() const { return id_import_pool() + 1; }
  int num_nodes() const { return id_export_pool() + 1; }
};

FlowLayout make_layout(const ProblemSpec& spec) {
  FlowLayout lay;
  lay.sources = spec.mu_plus.support();
  lay.sinks = spec.mu_minus.support();
  lay.imports = spec.tariffs.import_nodes(spec.grid);
  lay.exports = spec.tariffs.export_nodes(spec.grid);
  return lay;
}

}  // namespace

TransportPlan solve_primal(const CostMatrix& cost, const ProblemSpec& spec) {
  const Grid& grid = spec.grid;
  const int n = grid.size();
  for (int i : spec.mu_plus.support())
    if (!grid.interior[i])
      throw ParameterError("mu_plus has mass on non-interior node " +
                           grid.node_label(i));
  for (int i : spec.mu_minus.support())
    if (!grid.interior[i])
      throw ParameterError("mu_minus has mass on non-interior node " +
                           grid.node_label(i));

  auto arb = check_no_arbitrage(cost, spec);
  if (!arb.ok)
    throw NoArbitrageError(
        "no-arbitrage violated: psi_minus(" +
        grid.node_label(arb.worst_export_node) + ") - psi_plus(" +
        grid.node_label(arb.worst_import_node) + ") exceeds c(x,y) by " +
        std::to_string(arb.worst_violation));

  FlowLayout lay = make_layout(spec);
  const double m_plus = spec.mu_plus.total();
  const double m_minus = spec.mu_minus.total();
  if (m_plus > m_minus && lay.exports.empty())
    throw InfeasibleError("unbalanced problem without reserve: excess supply "
                          "and no export node");
  if (m_minus > m_plus && lay.imports.empty())
    throw InfeasibleError("unbalanced problem without reserve: excess demand "
                          "and no import node");

  FlowProblem fp;
  fp.num_nodes = lay.num_nodes();
  fp.supply.assign(fp.num_nodes, 0.0);
  for (size_t i = 0; i < lay.sources.size(); ++i)
    fp.supply[lay.id_source(i)] = spec.mu_plus.weights[lay.sources[i]];
  for (size_t j = 0; j < lay.sinks.size(); ++j)
    fp.supply[lay.id_sink(j)] = -spec.mu_minus.weights[lay.sinks[j]];
  fp.supply[lay.id_import_pool()] = m_minus;
  fp.supply[lay.id_export_pool()] = -m_plus;

  // interior, export, export-drain, import-feed, import, slack; the order
  // is load-bearing for the extraction below
  for (size_t i = 0; i < lay.sources.size(); ++i)
    for (size_t j = 0; j < lay.sinks.size(); ++j)
      fp.arcs.push_back({lay.id_source(i), lay.id_sink(j),
                         cost.cost(lay.sources[i], lay.sinks[j])});
  for (size_t i = 0; i < lay.sources.size(); ++i)
    for (size_t b = 0; b < lay.exports.size(); ++b)
      fp.arcs.push_back({lay.id_source(i), lay.id_export(b),
                         cost.cost(lay.sources[i], lay.exports[b])});
  const int first_drain = (int)fp.arcs.size();
  for (size_t b = 0; b < lay.exports.size(); ++b)
    fp.arcs.push_back({lay.id_export(b), lay.id_export_pool(),
                       -spec.tariffs.psi_minus[lay.exports[b]]});
  const int first_feed = (int)fp.arcs.size();
  for (size_t b = 0; b < lay.imports.size(); ++b)
    fp.arcs.push_back({lay.id_import_pool(), lay.id_import(b),
                       spec.tariffs.psi_plus[lay.imports[b]]});
  for (size_t b = 0; b < lay.imports.size(); ++b)
    for (size_t j = 0; j < lay.sinks.size(); ++j)
      fp.arcs.push_back({lay.id_import(b), lay.id_sink(j),
                         cost.cost(lay.imports[b], lay.sinks[j])});
  fp.arcs.push_back({lay.id_import_pool(), lay.id_export_pool(), 0.0});

  NetworkSimplex simplex;
  if (simplex.solve(fp) != NetworkSimplex::Status::optimal)
    throw InfeasibleError("transport network is infeasible");

  TransportPlan plan;
  plan.xi_plus.assign(n, 0.0);
  plan.xi_minus.assign(n, 0.0);
  const auto& flow = simplex.flows();
  int a = 0;
  for (size_t i = 0; i < lay.sources.size(); ++i)
    for (size_t j = 0; j < lay.sinks.size(); ++j, ++a)
      if (flow[a] > 0.0)
        plan.entries.push_back({lay.sources[i], lay.sinks[j], flow[a]});
  for (size_t i = 0; i < lay.sources.size(); ++i)
    for (size_t b = 0; b < lay.exports.size(); ++b, ++a)
      if (flow[a] > 0.0)
        plan.entries.push_back({lay.sources[i], lay.exports[b], flow[a]});
  for (size_t b = 0; b < lay.exports.size(); ++b, ++a)
    plan.xi_minus[lay.exports[b]] = flow[a];
  for (size_t b = 0; b < lay.imports.size(); ++b, ++a)
    plan.xi_plus[lay.imports[b]] = flow[a];
  for (size_t b = 0; b < lay.imports.size(); ++b)
    for (size_t j = 0; j < lay.sinks.size(); ++j, ++a)
      if (flow[a] > 0.0)
        plan.entries.push_back({lay.imports[b], lay.sinks[j], flow[a]});

  plan.objective = 0.0;
  for (const auto& e : plan.entries)
    plan.objective += cost.cost(e.src, e.dst) * e.mass;
  for (int b : lay.imports)
    plan.objective += spec.tariffs.psi_plus[b] * plan.xi_plus[b];
  for (int b : lay.exports)
    plan.objective -= spec.tariffs.psi_minus[b] * plan.xi_minus[b];

  // LP potentials, kept for the dual recovery. With the pools' potentials
  // as offsets these are optimal duals of the plan LP.
  const auto& pot = simplex.potentials();
  plan.lp_row_potential.assign(n, std::numeric_limits<double>::quiet_NaN());
  plan.lp_col_potential.assign(n, std::numeric_limits<double>::quiet_NaN());
  double s_export = pot[lay.id_export_pool()];
  double s_import = pot[lay.id_import_pool()];
  for (size_t i = 0; i < lay.sources.size(); ++i)
    plan.lp_row_potential[lay.sources[i]] =
        pot[lay.id_source(i)] - s_export;  // a_x = -phi_plus(x)
  for (size_t j = 0; j < lay.sinks.size(); ++j)
    plan.lp_col_potential[lay.sinks[j]] =
        s_import - pot[lay.id_sink(j)];  // b_y = phi_minus(y)
  return plan;
}

DualPotentials recover_dual(const TransportPlan& plan, const CostMatrix& cost,
                            const ProblemSpec& spec) {
  const Grid& grid = spec.grid;
  const int n = grid.size();
  auto imports = spec.tariffs.import_nodes(grid);
  auto exports = spec.tariffs.export_nodes(grid);

  // Anchors: optimal column potentials on spt(mu_minus), tariff rebates on
  // the export nodes.
  std::vector<std::pair<int, double>> anchors;
  for (int y = 0; y < n; ++y)
    if (!std::isnan(plan.lp_col_potential[y]))
      anchors.push_back({y, plan.lp_col_potential[y]});
  for (int b : exports) anchors.push_back({b, spec.tariffs.psi_minus[b]});

  DualPotentials duals;
  duals.phi_plus.assign(n, 0.0);
  duals.phi_minus.assign(n, 0.0);

  // phi_plus = upper transform of the anchors; the LP constraints make this
  // reproduce -a_x on spt(mu_plus) and stay below psi_plus on K+.
  for (int x = 0; x < n; ++x) {
    double best = -kInf;
    for (const auto& [y, val] : anchors)
      best = std::max(best, val - cost.cost(x, y));
    duals.phi_plus[x] = anchors.empty() ? 0.0 : best;
  }
  for (int b : imports)
    duals.phi_plus[b] = std::min(duals.phi_plus[b], spec.tariffs.psi_plus[b]);

  // phi_minus = lower transform of phi_plus: the largest feasible value,
  // which pins components the support graph does not reach.
  for (int y = 0; y < n; ++y) {
    double best = kInf;
    for (int x = 0; x < n; ++x)
      best = std::min(best, cost.cost(x, y) + duals.phi_plus[x]);
    duals.phi_minus[y] = best;
  }
  for (int b : exports)
    duals.phi_minus[b] =
        std::max(duals.phi_minus[b], spec.tariffs.psi_minus[b]);
  return duals;
}

PlanDecomposition decompose_plan(const TransportPlan& plan,
                                 const Grid& grid) {
  PlanDecomposition d;
  d.nu_plus.assign(grid.size(), 0.0);
  d.nu_minus.assign(grid.size(), 0.0);
  for (const auto& e : plan.entries) {
    bool src_reserve = grid.is_reserve(e.src);
    bool dst_reserve = grid.is_reserve(e.dst);
    if (src_reserve && dst_reserve)
      throw Error("plan carries reserve-to-reserve mass on (" +
                  grid.node_label(e.src) + " -> " + grid.node_label(e.dst) +
                  "); the normalization pi_bb = 0 is violated");
    if (!src_reserve && !dst_reserve) {
      d.ii.push_back(e);
    } else if (dst_reserve) {
      d.ib.push_back(e);
      d.nu_plus[e.src] += e.mass;
    } else {
      d.bi.push_back(e);
      d.nu_minus[e.dst] += e.mass;
    }
  }
  return d;
}

BoundarySelectors boundary_selectors(const CostMatrix& cost,
                                     const ProblemSpec& spec) {
  const Grid& grid = spec.grid;
  const int n = grid.size();
  auto imports = spec.tariffs.import_nodes(grid);
  auto exports = spec.tariffs.export_nodes(grid);
  if (imports.empty() && exports.empty())
    throw Error("boundary selectors need at least one finite tariff");
  BoundarySelectors sel;
  sel.t_ib.assign(n, -1);
  sel.t_bi.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    double best = kInf;
    for (int y : exports) {
      double v = cost.cost(x, y) - spec.tariffs.psi_minus[y];
      if (v < best) {
        best = v;
        sel.t_ib[x] = y;
      }
    }
  }
  for (int y = 0; y < n; ++y) {
    double best = kInf;
    for (int x : imports) {
      double v = cost.cost(x, y) + spec.tariffs.psi_plus[x];
      if (v < best) {
        best = v;
        sel.t_bi[y] = x;
      }
    }
  }
  return sel;
}

SlacknessReport check_complementary_slackness(const TransportPlan& plan,
                                              const DualPotentials& duals,
                                              const CostMatrix& cost,
                                              const ProblemSpec& spec) {
  SlacknessReport rep;
  const Grid& grid = spec.grid;
  for (int b = 0; b < grid.size(); ++b) {
    if (plan.xi_plus[b] > 0.0) {
      rep.max_import_gap =
          std::max(rep.max_import_gap,
                   std::abs(duals.phi_plus[b] - spec.tariffs.psi_plus[b]));
      ++rep.checked_conditions;
    }
    if (plan.xi_minus[b] > 0.0) {
      rep.max_export_gap =
          std::max(rep.max_export_gap,
                   std::abs(duals.phi_minus[b] - spec.tariffs.psi_minus[b]));
      ++rep.checked_conditions;
    }
  }
  for (const auto& e : plan.entries) {
    double gap = std::abs(cost.cost(e.src, e.dst) + duals.phi_plus[e.src] -
                          duals.phi_minus[e.dst]);
    rep.max_support_gap = std::max(rep.max_support_gap, gap);
    ++rep.checked_conditions;
  }
  return rep;
}

}  // namespace tariffot
