#pragma once

#include <string>
#include <variant>
#include <vector>

#include "netdecomp/netdecomp.hpp"

namespace outcome {

using namespace netdecomp;

/// Exhaustive check of one outcome against its definition. Returns an empty
/// string when valid, otherwise a description of the first failure.
inline std::string check_outcome(const Graph& g, const NodeMask& mask, const CutOrClusterResult& res) {
  const double n = static_cast<double>(mask.count());
  const double thin = res.config.sparse_layer_bound(mask.count());
  std::vector<int> part(g.num_nodes(), -1);
  auto mark = [&](const std::vector<NodeId>& nodes, int id) -> bool {
    for (NodeId v : nodes) {
      if (!mask.alive(v) || part[v] != -1) return false;
      part[v] = id;
    }
    return true;
  };
  if (const auto* cut = std::get_if<BalancedCut>(&res.outcome)) {
    if (!mark(cut->side1, 1) || !mark(cut->side2, 2) || !mark(cut->separator, 3)) return "cut parts overlap";
    for (NodeId v : mask.nodes())
      if (part[v] == -1) return "cut misses a node";
    for (auto [u, v] : g.edges())
      if ((part[u] == 1 && part[v] == 2) || (part[u] == 2 && part[v] == 1)) return "sides adjacent";
    if (3.0 * static_cast<double>(cut->side1.size()) < n) return "side1 below n/3";
    if (3.0 * static_cast<double>(cut->side2.size()) < n) return "side2 below n/3";
    if (static_cast<double>(cut->separator.size()) > thin + 1e-9) return "separator too large";
    return "";
  }
  const auto& comp = std::get<LargeComponent>(res.outcome);
  if (!mark(comp.nodes, 1) || !mark(comp.halo, 2)) return "component overlaps halo";
  if (3.0 * static_cast<double>(comp.nodes.size()) < n) return "component below n/3";
  if (static_cast<double>(comp.halo.size()) > thin + 1e-9) return "halo too large";
  // Halo is exactly the alive neighborhood of U.
  std::vector<char> expect_halo(g.num_nodes(), 0);
  for (NodeId u : comp.nodes)
    for (NodeId w : g.neighbors(u))
      if (mask.alive(w) && part[w] != 1) expect_halo[w] = 1;
  for (NodeId v : mask.nodes())
    if ((expect_halo[v] != 0) != (part[v] == 2)) return "halo is not the neighborhood of U";
  auto rep = induced_diameter(g, comp.nodes);
  if (!rep.connected) return "component disconnected";
  if (rep.diameter > res.diameter_bound) return "component diameter above bound";
  if (rep.diameter > 2 * (comp.a_final + res.config.window)) return "component diameter above 2 (a_final + K_L)";
  if (res.diameter_bound > res.config.diameter_bound()) return "component bound above global bound";
  return "";
}

}  // namespace outcome
