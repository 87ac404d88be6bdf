#pragma once

#include <span>
#include <vector>

#include "vsep/graph.hpp"

namespace vsep {

/// Optimal solution of  min Σ y  s.t.  y(u) + y(v) >= c(uv) for every edge,
/// y >= 0, together with a dual fractional matching proving optimality.
struct CoveringSolution {
  std::vector<double> y;         // per vertex
  std::vector<double> matching;  // per edge id, Σ_{e∋v} x_e <= 1
  double value = 0.0;            // Σ y
  double dual_value = 0.0;       // Σ c_e x_e
};

/// Exact solver. `demand` is indexed by edge id and must be nonnegative.
///
/// The program is solved on the bipartite double cover, where it becomes a
/// maximum weight matching problem with nonnegative vertex duals; a
/// primal-dual Hungarian search with Dijkstra phases runs in O(n m log n).
CoveringSolution solve_edge_covering(const Graph& g, std::span<const double> demand);

}  // namespace vsep
