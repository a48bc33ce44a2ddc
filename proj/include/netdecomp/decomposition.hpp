#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdecomp/graph.hpp"
#include "netdecomp/ledger.hpp"
#include "netdecomp/rng.hpp"
#include "netdecomp/strong_carving.hpp"

namespace netdecomp {

struct ColoredCluster {
  std::uint32_t id = 0;
  std::uint32_t color = 1;    // 1-based
  std::vector<NodeId> nodes;  // sorted
  NodeId center = 0;

  friend bool operator==(const ColoredCluster&, const ColoredCluster&) = default;
};

/// Partition of all nodes into colored clusters; same-colored clusters are
/// non-adjacent.
struct NetworkDecomposition {
  std::size_t num_nodes = 0;
  std::uint32_t colors = 0;
  std::vector<ColoredCluster> clusters;  // ordered by (color, first node); id == index
};

struct DecompositionResult {
  NetworkDecomposition decomposition;
  RoundLedger ledger;
  std::uint64_t diameter_bound = 0;    // max bound any carving iteration reported
  std::vector<std::size_t> remaining;  // alive count at the start of each iteration
};

/// ceil(log2 n) + 1: color budget for halving carvings.
inline std::uint32_t color_bound(std::size_t n) {
  if (n <= 1) return 1;
  return static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
}

/// Repeated ball carving with eps = 1/2: clusters found in iteration i get
/// color i, and the discarded nodes are the input to iteration i + 1.
inline DecompositionResult decompose(const Graph& g, std::uint64_t seed, const StrongCarver& carver) {
  constexpr double kEps = 0.5;
  const std::size_t n = g.num_nodes();
  DecompositionResult out;
  out.decomposition.num_nodes = n;
  NodeMask remaining = NodeMask::all(n);
  for (std::uint32_t color = 1; !remaining.empty(); ++color) {
    if (color > color_bound(n)) throw InvariantViolation("decompose: more iterations than ceil(log2 n) + 1");
    out.remaining.push_back(remaining.count());
    StrongCarving carving = carver(g, remaining, kEps, derive_seed(seed, {0xdec0ULL, color}));
    if (static_cast<double>(carving.dead.size()) > kEps * static_cast<double>(remaining.count())) {
      throw InvariantViolation("decompose: carver discarded more than half of the remaining nodes in iteration " +
                               std::to_string(color));
    }
    out.ledger.append(carving.ledger);
    out.diameter_bound = std::max(out.diameter_bound, carving.diameter_bound);
    for (auto& c : carving.clusters) {
      ColoredCluster cc;
      cc.id = static_cast<std::uint32_t>(out.decomposition.clusters.size());
      cc.color = color;
      cc.center = c.center;
      cc.nodes = std::move(c.nodes);
      out.decomposition.clusters.push_back(std::move(cc));
    }
    out.decomposition.colors = color;
    std::vector<NodeId> dead;
    dead.reserve(carving.dead.size());
    for (const auto& d : carving.dead) dead.push_back(d.node);
    remaining = NodeMask::from_nodes(n, dead);
  }
  return out;
}

}  // namespace netdecomp
