#pragma once

#include <vector>

#include "tariffot/dynamics.hpp"

namespace tariffot {

struct Grid;

/// Per-node import cost psi_plus and export rebate psi_minus.
///
/// +inf in psi_plus means "importing here is forbidden", -inf in psi_minus
/// means "exporting here is forbidden". Sentinels never enter arithmetic:
/// the solver omits the corresponding arcs instead of using big-M values.
/// Finite entries are only legal on the matching reserve set.
struct TariffSpec {
  std::vector<double> psi_plus;   // +inf off K+ and on forbidden K+ nodes
  std::vector<double> psi_minus;  // -inf off K- and on forbidden K- nodes

  TariffSpec() = default;
  explicit TariffSpec(int n)
      : psi_plus(n, kInf), psi_minus(n, -kInf) {}

  bool import_allowed(int node) const {
    return psi_plus[node] < kInf;
  }
  bool export_allowed(int node) const {
    return psi_minus[node] > -kInf;
  }

  /// Reserve nodes with a finite import cost / export rebate, ascending.
  std::vector<int> import_nodes(const Grid& grid) const;
  std::vector<int> export_nodes(const Grid& grid) const;
};

}  // namespace tariffot
