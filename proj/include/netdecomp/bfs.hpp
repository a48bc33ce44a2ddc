#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "netdecomp/graph.hpp"

namespace netdecomp {

/// Reusable BFS state over the alive-induced subgraph. Only the entries
/// touched by the previous run are reset, so repeated searches over small
/// regions of a large graph cost time proportional to the region.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(std::size_t n) : dist_(n, kUnreached), parent_(n, 0) {}

  /// Multi-source BFS restricted to alive nodes, stopping after layer `r_max`.
  void run(const Graph& g, const NodeMask& mask, std::span<const NodeId> sources,
           std::uint32_t r_max = kUnreached) {
    reset();
    if (dist_.size() < g.num_nodes()) {
      dist_.assign(g.num_nodes(), kUnreached);
      parent_.assign(g.num_nodes(), 0);
    }
    for (NodeId s : sources) {
      if (!mask.alive(s)) throw std::invalid_argument("BFS source is not alive");
      if (dist_[s] == kUnreached) {
        dist_[s] = 0;
        parent_[s] = s;
        order_.push_back(s);
      }
    }
    if (order_.empty()) return;
    std::size_t head = 0;
    std::uint32_t layer = 0;
    while (true) {
      std::size_t layer_end = order_.size();
      layer_end_.push_back(layer_end);
      if (layer == r_max || head == layer_end) break;
      for (; head < layer_end; ++head) {
        NodeId u = order_[head];
        for (NodeId w : g.neighbors(u)) {
          if (dist_[w] == kUnreached && mask.alive(w)) {
            dist_[w] = layer + 1;
            parent_[w] = u;
            order_.push_back(w);
          }
        }
      }
      if (order_.size() == layer_end) break;
      ++layer;
    }
  }

  /// Visited nodes in nondecreasing distance order.
  std::span<const NodeId> order() const { return order_; }
  std::size_t reached() const { return order_.size(); }
  std::uint32_t distance(NodeId v) const { return dist_[v]; }
  /// BFS-tree parent; a source is its own parent.
  NodeId parent(NodeId v) const { return parent_[v]; }

  /// Largest distance reached (the eccentricity of the source set when the
  /// run was not truncated).
  std::uint32_t depth() const {
    return layer_end_.empty() ? 0 : static_cast<std::uint32_t>(layer_end_.size() - 1);
  }

  /// |B_r|: nodes at distance <= r. Saturates past the last reached layer.
  std::size_t ball_size(std::uint32_t r) const {
    if (layer_end_.empty()) return 0;
    return r < layer_end_.size() ? layer_end_[r] : layer_end_.back();
  }

  std::span<const NodeId> layer(std::uint32_t r) const {
    if (r >= layer_end_.size()) return {};
    std::size_t begin = r == 0 ? 0 : layer_end_[r - 1];
    return std::span<const NodeId>(order_).subspan(begin, layer_end_[r] - begin);
  }

  std::span<const NodeId> ball(std::uint32_t r) const {
    return std::span<const NodeId>(order_).first(ball_size(r));
  }

 private:
  void reset() {
    for (NodeId v : order_) dist_[v] = kUnreached;
    order_.clear();
    layer_end_.clear();
  }

  std::vector<std::uint32_t> dist_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> order_;
  std::vector<std::size_t> layer_end_;
};

struct BfsLayers {
  std::vector<std::size_t> cumulative;  // |B_0| .. |B_{r_max}|
  std::vector<std::uint32_t> distance;  // kUnreached beyond r_max or off-mask
};

inline BfsLayers bfs_layers(const Graph& g, const NodeMask& mask, std::span<const NodeId> sources,
                            std::uint32_t r_max) {
  if (sources.empty()) throw std::invalid_argument("no sources");
  BfsWorkspace ws(g.num_nodes());
  ws.run(g, mask, sources, r_max);
  BfsLayers out;
  out.cumulative.resize(static_cast<std::size_t>(r_max) + 1);
  for (std::uint32_t r = 0; r <= r_max; ++r) out.cumulative[r] = ws.ball_size(r);
  out.distance.assign(g.num_nodes(), kUnreached);
  for (NodeId v : ws.order()) out.distance[v] = ws.distance(v);
  return out;
}

/// Connected components of the alive subgraph, each sorted ascending, listed
/// in order of their smallest node.
inline std::vector<std::vector<NodeId>> connected_components(const Graph& g, const NodeMask& mask) {
  std::vector<std::vector<NodeId>> out;
  std::vector<std::uint8_t> seen(g.num_nodes(), 0);
  std::vector<NodeId> stack;
  for (NodeId s : mask.nodes()) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (NodeId w : g.neighbors(u)) {
        if (!seen[w] && mask.alive(w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g, const NodeMask& mask) {
  if (mask.empty()) return true;
  BfsWorkspace ws(g.num_nodes());
  NodeId s = mask.nodes().front();
  ws.run(g, mask, std::span<const NodeId>(&s, 1));
  return ws.reached() == mask.count();
}

/// Eccentricity of `v` inside the alive subgraph (ignores unreachable nodes).
inline std::uint32_t eccentricity(const Graph& g, const NodeMask& mask, NodeId v) {
  BfsWorkspace ws(g.num_nodes());
  ws.run(g, mask, std::span<const NodeId>(&v, 1));
  return ws.depth();
}

}  // namespace netdecomp
