#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "netdecomp/netdecomp.hpp"

namespace fixtures {

using netdecomp::Graph;
using netdecomp::NodeId;
using netdecomp::NodeMask;

struct FuzzGraph {
  std::string name;
  Graph graph;
};

/// Deterministic fuzz graph: index picks the family, seed the size and edges.
/// Families cycle through path, grid, G(n, p) with p in {0.005, 0.02, 0.1}
/// and random 4-regular graphs. Node counts are log-uniform in [min_n, max_n].
inline FuzzGraph fuzz_graph(std::size_t index, std::uint64_t seed, std::size_t min_n, std::size_t max_n) {
  netdecomp::Rng rng(netdecomp::derive_seed(seed, {index, 0xf022}));
  const double lo = std::log(static_cast<double>(min_n));
  const double hi = std::log(static_cast<double>(max_n));
  auto n = static_cast<std::size_t>(std::exp(lo + (hi - lo) * netdecomp::uniform01(rng)));
  n = std::clamp(n, min_n, max_n);
  const std::uint64_t gseed = rng();
  switch (index % 6) {
    case 0:
      return {"path-" + std::to_string(n), netdecomp::make_path(n)};
    case 1: {
      auto rows = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
      auto cols = std::max<std::size_t>(1, n / rows);
      return {"grid-" + std::to_string(rows) + "x" + std::to_string(cols), netdecomp::make_grid(rows, cols)};
    }
    case 2:
      return {"gnp005-" + std::to_string(n), netdecomp::make_gnp(n, 0.005, gseed)};
    case 3:
      return {"gnp02-" + std::to_string(n), netdecomp::make_gnp(n, 0.02, gseed)};
    case 4:
      return {"gnp1-" + std::to_string(n), netdecomp::make_gnp(n, 0.1, gseed)};
    default: {
      std::size_t m = std::max<std::size_t>(n, 6);
      return {"regular4-" + std::to_string(m), netdecomp::make_regular(m, 4, gseed)};
    }
  }
}

/// Mask of the largest connected component (smallest first node on ties).
inline NodeMask largest_component(const Graph& g) {
  auto comps = netdecomp::connected_components(g, NodeMask::all(g.num_nodes()));
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].size() > comps[best].size()) best = i;
  return NodeMask::from_nodes(g.num_nodes(), comps[best]);
}

/// Random subset of nodes, each kept with probability `keep`.
inline NodeMask random_mask(std::size_t n, double keep, std::uint64_t seed) {
  netdecomp::Rng rng(seed);
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < n; ++v)
    if (netdecomp::uniform01(rng) < keep) nodes.push_back(v);
  return NodeMask::from_nodes(n, nodes);
}

}  // namespace fixtures
