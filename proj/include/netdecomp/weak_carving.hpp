#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netdecomp/bfs.hpp"
#include "netdecomp/graph.hpp"
#include "netdecomp/ledger.hpp"
#include "netdecomp/parallel.hpp"
#include "netdecomp/rng.hpp"

namespace netdecomp {

/// Rooted tree in the host graph whose terminals are the nodes of one cluster.
/// Tree nodes other than terminals may be anywhere in the current component.
struct SteinerTree {
  NodeId root = 0;
  std::vector<Edge> parent;       // (node, parent) for every non-root tree node, sorted by node
  std::vector<NodeId> terminals;  // sorted
};

struct WeakCluster {
  std::vector<NodeId> nodes;  // sorted
  SteinerTree tree;
};

/// Weak-diameter ball carving: non-adjacent clusters, each spanned by a
/// Steiner tree of depth <= declared_depth, with every edge shared by at most
/// declared_congestion trees.
struct WeakCarving {
  std::vector<WeakCluster> clusters;
  std::vector<NodeId> dead;  // sorted
  std::uint32_t declared_depth = 0;
  std::uint32_t declared_congestion = 1;
};

struct WeakCarveResult {
  WeakCarving carving;
  RoundLedger ledger;
};

enum class WeakImpl { Trivial, LinialSaks };

/// Max root-to-node distance along parent pointers. Throws on a cycle or a
/// dangling pointer.
inline std::uint32_t steiner_depth(const SteinerTree& tree) {
  std::vector<std::pair<NodeId, NodeId>> par = tree.parent;
  std::sort(par.begin(), par.end());
  auto lookup = [&](NodeId v) -> const NodeId* {
    auto it = std::lower_bound(par.begin(), par.end(), std::pair<NodeId, NodeId>(v, 0));
    return (it != par.end() && it->first == v) ? &it->second : nullptr;
  };
  std::uint32_t best = 0;
  for (NodeId t : tree.terminals) {
    std::uint32_t d = 0;
    NodeId cur = t;
    while (cur != tree.root) {
      const NodeId* p = lookup(cur);
      if (p == nullptr || d > par.size()) throw std::invalid_argument("malformed Steiner tree");
      cur = *p;
      ++d;
    }
    best = std::max(best, d);
  }
  return best;
}

/// Max number of trees sharing one undirected edge (0 if no tree has edges).
inline std::uint32_t steiner_congestion(std::span<const WeakCluster> clusters) {
  std::vector<std::uint64_t> keys;
  for (const auto& c : clusters) {
    for (auto [v, p] : c.tree.parent) {
      NodeId a = std::min(v, p);
      NodeId b = std::max(v, p);
      keys.push_back((static_cast<std::uint64_t>(a) << 32) | b);
    }
  }
  std::sort(keys.begin(), keys.end());
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    best = std::max(best, static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return best;
}

namespace detail {

inline void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

/// One cluster per component: BFS tree from the smallest id.
inline WeakCarveResult trivial_component(const Graph& g, const NodeMask& mask, std::span<const NodeId> comp) {
  BfsWorkspace ws(g.num_nodes());
  NodeId root = comp.front();
  ws.run(g, mask, std::span<const NodeId>(&root, 1));
  WeakCluster cluster;
  cluster.nodes.assign(comp.begin(), comp.end());
  cluster.tree.root = root;
  cluster.tree.terminals = cluster.nodes;
  for (NodeId v : comp) {
    if (v != root) cluster.tree.parent.emplace_back(v, ws.parent(v));
  }
  WeakCarveResult out;
  out.carving.declared_depth = ws.depth();
  out.carving.clusters.push_back(std::move(cluster));
  out.ledger.charge_leader(ws.depth());
  return out;
}

struct LsAttempt {
  std::vector<WeakCluster> clusters;
  std::vector<NodeId> dead;
};

/// Truncated geometric radii, highest-id broadcaster wins, and a node at
/// zero residual distance with a neighbor of another center is discarded.
/// Broadcasts are pruned wherever a higher-id broadcaster already arrived
/// with at least the same residual, since it then dominates everything past
/// that point.
inline LsAttempt linial_saks_attempt(const Graph& g, const NodeMask& mask, std::span<const NodeId> comp,
                                     double p, std::uint32_t r_cap, std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  Rng rng(seed);
  std::vector<std::uint32_t> radius(n, 0);
  const double log_q = std::log1p(-p);
  for (NodeId v : comp) {
    double u = uniform01(rng);
    double raw = std::floor(std::log1p(-u) / log_q);
    radius[v] = raw >= static_cast<double>(r_cap) ? r_cap : static_cast<std::uint32_t>(raw);
  }

  constexpr NodeId kNone = kUnreached;
  std::vector<std::int64_t> best_residual(n, -1);
  std::vector<NodeId> winner(n, kNone);
  std::vector<std::uint32_t> slack(n, 0);
  std::vector<std::uint32_t> stamp(n, 0);  // 1 + rank of the broadcaster that last visited
  std::vector<NodeId> local_parent(n, 0);
  std::vector<std::uint32_t> local_dist(n, 0);
  std::vector<std::vector<Edge>> tree_edges(comp.size());  // indexed by rank of root in comp
  std::vector<std::uint32_t> in_tree(n, 0);                // 1 + rank whose tree contains it
  std::vector<NodeId> queue;

  for (std::size_t rank = comp.size(); rank-- > 0;) {
    const NodeId u = comp[rank];
    const auto mark = static_cast<std::uint32_t>(rank + 1);
    const std::int64_t r_u = radius[u];
    queue.clear();
    stamp[u] = mark;
    local_dist[u] = 0;
    local_parent[u] = u;
    queue.push_back(u);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId x = queue[head];
      const std::int64_t residual = r_u - local_dist[x];
      if (residual <= best_residual[x]) continue;
      best_residual[x] = residual;
      if (winner[x] == kNone) {
        winner[x] = u;
        slack[x] = static_cast<std::uint32_t>(residual);
        for (NodeId y = x; y != u && in_tree[y] != mark; y = local_parent[y]) {
          in_tree[y] = mark;
          tree_edges[rank].emplace_back(y, local_parent[y]);
        }
      }
      if (residual == 0) continue;
      for (NodeId w : g.neighbors(x)) {
        if (stamp[w] != mark && mask.alive(w)) {
          stamp[w] = mark;
          local_dist[w] = local_dist[x] + 1;
          local_parent[w] = x;
          queue.push_back(w);
        }
      }
    }
  }

  LsAttempt out;
  std::vector<std::uint8_t> is_dead(n, 0);
  for (NodeId v : comp) {
    if (slack[v] != 0) continue;
    for (NodeId w : g.neighbors(v)) {
      if (mask.alive(w) && winner[w] != winner[v]) {
        is_dead[v] = 1;
        out.dead.push_back(v);
        break;
      }
    }
  }

  // Group survivors by center; comp is sorted so member lists come out sorted.
  std::vector<std::size_t> rank_of_center(n, 0);
  for (std::size_t i = 0; i < comp.size(); ++i) rank_of_center[comp[i]] = i;
  std::vector<std::vector<NodeId>> members(comp.size());
  for (NodeId v : comp) {
    if (!is_dead[v]) members[rank_of_center[winner[v]]].push_back(v);
  }

  std::vector<NodeId> par_lookup(n, kNone);
  std::vector<std::uint8_t> keep(n, 0);
  for (std::size_t rank = 0; rank < comp.size(); ++rank) {
    if (members[rank].empty()) continue;
    const NodeId root = comp[rank];
    for (auto [v, p] : tree_edges[rank]) par_lookup[v] = p;
    WeakCluster cluster;
    cluster.nodes = std::move(members[rank]);
    cluster.tree.root = root;
    cluster.tree.terminals = cluster.nodes;
    for (NodeId t : cluster.nodes) {
      for (NodeId y = t; y != root && !keep[y]; y = par_lookup[y]) {
        keep[y] = 1;
        cluster.tree.parent.emplace_back(y, par_lookup[y]);
      }
    }
    std::sort(cluster.tree.parent.begin(), cluster.tree.parent.end());
    for (auto [v, p] : tree_edges[rank]) {
      par_lookup[v] = kNone;
      keep[v] = 0;
    }
    out.clusters.push_back(std::move(cluster));
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const WeakCluster& a, const WeakCluster& b) { return a.nodes.front() < b.nodes.front(); });
  return out;
}

inline constexpr int kLinialSaksAttempts = 64;

/// Repeats independent attempts until the discard count fits the budget,
/// turning the expected bound into a per-run one. Each attempt is charged.
inline WeakCarveResult linial_saks_component(const Graph& g, const NodeMask& mask, std::span<const NodeId> comp,
                                             double eps, std::uint64_t seed) {
  const double alive = static_cast<double>(comp.size());
  const double p = eps / 2.0;
  const auto r_cap = static_cast<std::uint32_t>(std::ceil(2.0 * std::log(alive) / eps));
  const std::uint32_t leader_depth = eccentricity(g, mask, comp.front());

  WeakCarveResult out;
  LsAttempt best;
  bool have_best = false;
  for (int attempt = 0; attempt < kLinialSaksAttempts; ++attempt) {
    LsAttempt cur = linial_saks_attempt(g, mask, comp, p, r_cap, derive_seed(seed, {comp.front(), 0x15ULL, static_cast<std::uint64_t>(attempt)}));
    out.ledger.charge_bfs(r_cap);
    out.ledger.charge("winner-exchange", 1);
    out.ledger.charge_leader(leader_depth);  // discard count check
    bool fits = static_cast<double>(cur.dead.size()) <= eps * alive;
    if (!have_best || cur.dead.size() < best.dead.size()) {
      best = std::move(cur);
      have_best = true;
    }
    if (fits) break;
  }
  std::uint32_t depth = 0;
  for (const auto& c : best.clusters) depth = std::max(depth, steiner_depth(c.tree));
  out.carving.clusters = std::move(best.clusters);
  out.carving.dead = std::move(best.dead);
  out.carving.declared_depth = depth;
  return out;
}

}  // namespace detail

/// Runs the chosen weak carving on every connected component of `mask`
/// independently and merges the results.
inline WeakCarveResult weak_carve(const Graph& g, const NodeMask& mask, double eps, std::uint64_t seed,
                                  WeakImpl impl) {
  detail::check_eps(eps);
  if (mask.empty()) throw std::invalid_argument("weak_carve: empty alive set");
  auto comps = connected_components(g, mask);
  std::vector<WeakCarveResult> parts(comps.size());
  parallel_for(comps.size(), [&](std::size_t i) {
    parts[i] = impl == WeakImpl::Trivial ? detail::trivial_component(g, mask, comps[i])
                                         : detail::linial_saks_component(g, mask, comps[i], eps, seed);
  });
  WeakCarveResult out;
  std::vector<RoundLedger> ledgers;
  ledgers.reserve(parts.size());
  for (auto& part : parts) {
    out.carving.declared_depth = std::max(out.carving.declared_depth, part.carving.declared_depth);
    for (auto& c : part.carving.clusters) out.carving.clusters.push_back(std::move(c));
    out.carving.dead.insert(out.carving.dead.end(), part.carving.dead.begin(), part.carving.dead.end());
    ledgers.push_back(std::move(part.ledger));
  }
  std::sort(out.carving.dead.begin(), out.carving.dead.end());
  out.carving.declared_congestion = std::max<std::uint32_t>(1, steiner_congestion(out.carving.clusters));
  out.ledger = merge_parallel(ledgers);
  return out;
}

/// Any callable (graph, mask, eps, seed) -> WeakCarveResult can stand in for
/// the weak-diameter black box.
using WeakCarver = std::function<WeakCarveResult(const Graph&, const NodeMask&, double, std::uint64_t)>;

inline WeakCarver weak_carver(WeakImpl impl) {
  return [impl](const Graph& g, const NodeMask& mask, double eps, std::uint64_t seed) {
    return weak_carve(g, mask, eps, seed, impl);
  };
}

}  // namespace netdecomp
