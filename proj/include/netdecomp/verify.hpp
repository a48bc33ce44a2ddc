#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netdecomp/bfs.hpp"
#include "netdecomp/decomposition.hpp"
#include "netdecomp/graph.hpp"
#include "netdecomp/strong_carving.hpp"
#include "netdecomp/weak_carving.hpp"

namespace netdecomp {

// Verifiers re-check every object from its definition, using nothing but
// graph searches. They return violations as data and never throw on bad
// input structures.

enum class ViolationKind {
  NotPartition,
  AdjacentSameColor,  // also used for adjacent clusters of a carving (one color class)
  DiameterExceeded,
  DeadBudgetExceeded,
  SteinerDepth,
  SteinerCongestion,
  SteinerTerminals,
  SteinerMalformed,
  DisconnectedCluster,
  ColorBoundExceeded,
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::NotPartition:
      return "not-partition";
    case ViolationKind::AdjacentSameColor:
      return "adjacent-same-color";
    case ViolationKind::DiameterExceeded:
      return "diameter-exceeded";
    case ViolationKind::DeadBudgetExceeded:
      return "dead-budget-exceeded";
    case ViolationKind::SteinerDepth:
      return "steiner-depth";
    case ViolationKind::SteinerCongestion:
      return "steiner-congestion";
    case ViolationKind::SteinerTerminals:
      return "steiner-terminals";
    case ViolationKind::SteinerMalformed:
      return "steiner-malformed";
    case ViolationKind::DisconnectedCluster:
      return "disconnected-cluster";
    case ViolationKind::ColorBoundExceeded:
      return "color-bound-exceeded";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind = ViolationKind::NotPartition;
  std::vector<NodeId> witness;  // offending nodes; an edge is reported as its two endpoints
  std::uint64_t measured = 0;
  std::uint64_t bound = 0;
  std::string detail;
};

/// Clusters at or below this size get exact all-pairs BFS; above it a sampled
/// lower bound can reject early before the exact pass.
inline constexpr std::size_t kExactDiameterLimit = 5000;

struct DiameterReport {
  bool connected = true;
  std::uint32_t diameter = 0;
  std::pair<NodeId, NodeId> farthest{0, 0};
};

/// Exact strong diameter of G[nodes] by BFS from every node.
inline DiameterReport induced_diameter(const Graph& g, std::span<const NodeId> nodes) {
  DiameterReport rep;
  if (nodes.empty()) return rep;
  const NodeMask mask = NodeMask::from_nodes(g.num_nodes(), nodes);
  BfsWorkspace ws(g.num_nodes());
  for (NodeId s : mask.nodes()) {
    ws.run(g, mask, std::span<const NodeId>(&s, 1));
    if (ws.reached() != mask.count()) {
      rep.connected = false;
      return rep;
    }
    if (s == mask.nodes().front() || ws.depth() > rep.diameter) {
      rep.diameter = ws.depth();
      rep.farthest = {s, ws.order().back()};
    }
  }
  return rep;
}

namespace detail {

/// Checks connectivity and diameter <= bound. A single BFS certifies the
/// bound when twice its eccentricity fits; otherwise the diameter is measured.
inline std::optional<Violation> check_cluster_diameter(const Graph& g, std::span<const NodeId> nodes,
                                                       std::uint64_t bound) {
  if (nodes.empty()) return std::nullopt;
  const NodeMask mask = NodeMask::from_nodes(g.num_nodes(), nodes);
  BfsWorkspace ws(g.num_nodes());
  NodeId s = mask.nodes().front();
  ws.run(g, mask, std::span<const NodeId>(&s, 1));
  if (ws.reached() != mask.count()) {
    Violation v{ViolationKind::DisconnectedCluster, {s}, ws.reached(), mask.count(), "cluster induces a disconnected subgraph"};
    for (NodeId x : mask.nodes()) {
      if (ws.distance(x) == kUnreached) {
        v.witness.push_back(x);
        break;
      }
    }
    return v;
  }
  if (2ULL * ws.depth() <= bound) return std::nullopt;
  if (ws.depth() > bound) {
    return Violation{ViolationKind::DiameterExceeded, {s, ws.order().back()}, ws.depth(), bound,
                     "eccentricity already exceeds the bound"};
  }
  if (mask.count() > kExactDiameterLimit) {
    // Double sweep from the farthest node gives a cheap lower bound.
    NodeId far = ws.order().back();
    ws.run(g, mask, std::span<const NodeId>(&far, 1));
    if (ws.depth() > bound) {
      return Violation{ViolationKind::DiameterExceeded, {far, ws.order().back()}, ws.depth(), bound,
                       "double-sweep lower bound exceeds the bound"};
    }
  }
  DiameterReport rep = induced_diameter(g, mask.nodes());
  if (rep.diameter > bound) {
    return Violation{ViolationKind::DiameterExceeded, {rep.farthest.first, rep.farthest.second}, rep.diameter, bound,
                     "strong diameter exceeds the bound"};
  }
  return std::nullopt;
}

constexpr std::uint32_t kNoOwner = kUnreached;
constexpr std::uint32_t kDeadOwner = kUnreached - 1;

/// Assigns owner ids; reports out-of-range, off-mask and duplicate nodes.
inline void claim(std::vector<std::uint32_t>& owner, const NodeMask* mask, NodeId v, std::uint32_t id,
                  std::vector<Violation>& out) {
  if (v >= owner.size()) {
    out.push_back({ViolationKind::NotPartition, {v}, 0, 0, "node id out of range"});
    return;
  }
  if (mask != nullptr && !mask->alive(v)) {
    out.push_back({ViolationKind::NotPartition, {v}, 0, 0, "node outside the input alive set"});
    return;
  }
  if (owner[v] != kNoOwner) {
    out.push_back({ViolationKind::NotPartition, {v}, 0, 0, "node assigned twice"});
    return;
  }
  owner[v] = id;
}

inline void report_uncovered(const std::vector<std::uint32_t>& owner, std::span<const NodeId> expected,
                             std::vector<Violation>& out) {
  for (NodeId v : expected) {
    if (owner[v] == kNoOwner) out.push_back({ViolationKind::NotPartition, {v}, 0, 0, "node not covered"});
  }
}

inline void report_adjacent_clusters(const Graph& g, const std::vector<std::uint32_t>& owner,
                                     const std::vector<std::uint32_t>* color, std::vector<Violation>& out) {
  for (auto [u, v] : g.edges()) {
    std::uint32_t ou = owner[u];
    std::uint32_t ov = owner[v];
    if (ou >= kDeadOwner || ov >= kDeadOwner || ou == ov) continue;
    if (color != nullptr && (*color)[ou] != (*color)[ov]) continue;
    out.push_back({ViolationKind::AdjacentSameColor, {u, v}, 0, 0, "edge joins two clusters of the same color"});
  }
}

inline void check_dead_budget(std::size_t dead, std::size_t alive, double eps, std::vector<Violation>& out) {
  if (static_cast<double>(dead) > eps * static_cast<double>(alive)) {
    out.push_back({ViolationKind::DeadBudgetExceeded, {}, dead,
                   static_cast<std::uint64_t>(eps * static_cast<double>(alive)), "too many discarded nodes"});
  }
}

}  // namespace detail

inline std::vector<Violation> verify_decomposition(const Graph& g, const NetworkDecomposition& d,
                                                   std::uint64_t color_limit, std::uint64_t diameter_limit) {
  std::vector<Violation> out;
  const std::size_t n = g.num_nodes();
  if (d.num_nodes != n) {
    out.push_back({ViolationKind::NotPartition, {}, d.num_nodes, n, "decomposition is for a different node count"});
  }
  std::vector<std::uint32_t> owner(n, detail::kNoOwner);
  std::vector<std::uint32_t> color(d.clusters.size(), 0);
  std::uint32_t max_color = 0;
  for (std::size_t i = 0; i < d.clusters.size(); ++i) {
    const auto& c = d.clusters[i];
    color[i] = c.color;
    max_color = std::max(max_color, c.color);
    if (c.color < 1 || c.color > color_limit) {
      out.push_back({ViolationKind::ColorBoundExceeded, {}, c.color, color_limit, "cluster color outside 1..C"});
    }
    for (NodeId v : c.nodes) detail::claim(owner, nullptr, v, static_cast<std::uint32_t>(i), out);
  }
  if (d.colors > color_limit) {
    out.push_back({ViolationKind::ColorBoundExceeded, {}, d.colors, color_limit, "too many colors"});
  }
  for (NodeId v = 0; v < n; ++v) {
    if (owner[v] == detail::kNoOwner) out.push_back({ViolationKind::NotPartition, {v}, 0, 0, "node not covered"});
  }
  detail::report_adjacent_clusters(g, owner, &color, out);
  for (const auto& c : d.clusters) {
    std::vector<NodeId> valid;
    for (NodeId v : c.nodes) {
      if (v < n) valid.push_back(v);
    }
    if (auto v = detail::check_cluster_diameter(g, valid, diameter_limit)) out.push_back(std::move(*v));
  }
  return out;
}

inline std::vector<Violation> verify_strong_carving(const Graph& g, const NodeMask& mask, const StrongCarving& c,
                                                    double eps, std::uint64_t diameter_limit) {
  std::vector<Violation> out;
  std::vector<std::uint32_t> owner(g.num_nodes(), detail::kNoOwner);
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    for (NodeId v : c.clusters[i].nodes) detail::claim(owner, &mask, v, static_cast<std::uint32_t>(i), out);
  }
  for (const auto& d : c.dead) detail::claim(owner, &mask, d.node, detail::kDeadOwner, out);
  detail::report_uncovered(owner, mask.nodes(), out);
  detail::check_dead_budget(c.dead.size(), mask.count(), eps, out);
  detail::report_adjacent_clusters(g, owner, nullptr, out);
  for (const auto& cluster : c.clusters) {
    std::vector<NodeId> valid;
    for (NodeId v : cluster.nodes) {
      if (mask.alive(v)) valid.push_back(v);
    }
    if (auto v = detail::check_cluster_diameter(g, valid, diameter_limit)) out.push_back(std::move(*v));
  }
  return out;
}

inline std::vector<Violation> verify_weak_carving(const Graph& g, const NodeMask& mask, const WeakCarving& w,
                                                  double eps) {
  std::vector<Violation> out;
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> owner(n, detail::kNoOwner);
  for (std::size_t i = 0; i < w.clusters.size(); ++i) {
    for (NodeId v : w.clusters[i].nodes) detail::claim(owner, &mask, v, static_cast<std::uint32_t>(i), out);
  }
  for (NodeId v : w.dead) detail::claim(owner, &mask, v, detail::kDeadOwner, out);
  detail::report_uncovered(owner, mask.nodes(), out);
  detail::check_dead_budget(w.dead.size(), mask.count(), eps, out);
  detail::report_adjacent_clusters(g, owner, nullptr, out);

  std::vector<NodeId> parent_of(n, kUnreached);
  std::vector<std::uint32_t> depth(n, kUnreached);
  std::vector<std::uint64_t> edge_keys;
  for (const auto& cluster : w.clusters) {
    const auto& tree = cluster.tree;
    std::vector<NodeId> nodes = cluster.nodes;
    std::vector<NodeId> terms = tree.terminals;
    std::sort(nodes.begin(), nodes.end());
    std::sort(terms.begin(), terms.end());
    if (nodes != terms) {
      out.push_back({ViolationKind::SteinerTerminals, nodes.empty() ? std::vector<NodeId>{} : std::vector<NodeId>{nodes.front()},
                     terms.size(), nodes.size(), "terminals differ from the cluster"});
    }
    bool malformed = false;
    if (!mask.alive(tree.root)) {
      out.push_back({ViolationKind::SteinerMalformed, {tree.root}, 0, 0, "tree root outside the component"});
      malformed = true;
    }
    std::vector<NodeId> touched;
    for (auto [v, p] : tree.parent) {
      if (!mask.alive(v) || !mask.alive(p) || !g.has_edge(v, p) || v == tree.root || parent_of[v] != kUnreached) {
        out.push_back({ViolationKind::SteinerMalformed, {v, p}, 0, 0, "tree edge invalid or repeated"});
        malformed = true;
        continue;
      }
      parent_of[v] = p;
      touched.push_back(v);
      edge_keys.push_back((static_cast<std::uint64_t>(std::min(v, p)) << 32) | std::max(v, p));
    }
    if (!malformed) {
      if (tree.root < n) depth[tree.root] = 0;
      // Resolve depths iteratively; a chain longer than the tree is a cycle.
      std::vector<NodeId> chain;
      for (NodeId t : cluster.nodes) {
        if (t >= n) continue;
        chain.clear();
        NodeId cur = t;
        while (depth[cur] == kUnreached && parent_of[cur] != kUnreached && chain.size() <= touched.size()) {
          chain.push_back(cur);
          cur = parent_of[cur];
        }
        if (depth[cur] == kUnreached) {
          out.push_back({ViolationKind::SteinerTerminals, {t}, 0, 0, "terminal not connected to the root"});
          continue;
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = depth[parent_of[*it]] + 1;
        if (depth[t] > w.declared_depth) {
          out.push_back({ViolationKind::SteinerDepth, {t}, depth[t], w.declared_depth, "terminal deeper than R"});
        }
      }
    }
    for (NodeId v : touched) {
      parent_of[v] = kUnreached;
      depth[v] = kUnreached;
    }
    if (tree.root < n) depth[tree.root] = kUnreached;
  }
  std::sort(edge_keys.begin(), edge_keys.end());
  for (std::size_t i = 0; i < edge_keys.size();) {
    std::size_t j = i;
    while (j < edge_keys.size() && edge_keys[j] == edge_keys[i]) ++j;
    if (j - i > w.declared_congestion) {
      out.push_back({ViolationKind::SteinerCongestion,
                     {static_cast<NodeId>(edge_keys[i] >> 32), static_cast<NodeId>(edge_keys[i] & 0xffffffffULL)},
                     j - i, w.declared_congestion, "edge shared by more than L trees"});
    }
    i = j;
  }
  return out;
}

/// Largest radius-r ball over all nodes of g.
inline std::size_t max_ball_size(const Graph& g, std::uint32_t r) {
  const NodeMask mask = NodeMask::all(g.num_nodes());
  BfsWorkspace ws(g.num_nodes());
  std::size_t best = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    ws.run(g, mask, std::span<const NodeId>(&v, 1), r);
    best = std::max(best, ws.reached());
  }
  return best;
}

/// True iff every radius-r ball has fewer than t nodes. A connected set of
/// diameter <= r sits inside the radius-r ball of any of its nodes, so a true
/// answer rules out connected subgraphs of diameter <= r with t or more nodes.
inline bool no_large_lowdiam_component(const Graph& g, std::uint32_t r, std::size_t t) {
  return max_ball_size(g, r) < t;
}

}  // namespace netdecomp
