#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netdecomp/bfs.hpp"
#include "netdecomp/graph.hpp"
#include "netdecomp/ledger.hpp"
#include "netdecomp/parallel.hpp"
#include "netdecomp/rng.hpp"
#include "netdecomp/weak_carving.hpp"

namespace netdecomp {

enum class DeadCause { BlackBox, Boundary, Separator, Halo };

inline std::string_view to_string(DeadCause c) {
  switch (c) {
    case DeadCause::BlackBox:
      return "black-box";
    case DeadCause::Boundary:
      return "boundary";
    case DeadCause::Separator:
      return "separator";
    case DeadCause::Halo:
      return "halo";
  }
  return "unknown";
}

struct DeadNode {
  NodeId node = 0;
  DeadCause cause = DeadCause::BlackBox;

  friend bool operator==(const DeadNode&, const DeadNode&) = default;
};

struct StrongCluster {
  std::vector<NodeId> nodes;  // sorted
  NodeId center = 0;
  std::uint32_t radius = 0;  // eccentricity of center inside the cluster

  friend bool operator==(const StrongCluster&, const StrongCluster&) = default;
};

struct IterationTrace {
  std::uint32_t iteration = 0;
  std::size_t component_size = 0;
};

struct BallRecord {
  std::uint32_t iteration = 0;
  NodeId center = 0;
  std::uint32_t r_start = 0;
  std::uint32_t radius = 0;  // r*
};

/// Strong-diameter ball carving plus the run metadata needed to check it.
struct StrongCarving {
  std::vector<StrongCluster> clusters;  // sorted by first node
  std::vector<DeadNode> dead;           // sorted by node
  RoundLedger ledger;

  std::uint32_t black_box_depth = 0;  // max Steiner depth any black-box call declared
  std::uint32_t growth_cap = 0;
  std::uint64_t diameter_bound = 0;   // every cluster's strong diameter is at most this
  std::vector<IterationTrace> trace;  // component sizes at the start of each iteration
  std::vector<BallRecord> balls;      // one per carved ball, in iteration order

  std::size_t dead_count(DeadCause cause) const {
    return static_cast<std::size_t>(
        std::count_if(dead.begin(), dead.end(), [cause](const DeadNode& d) { return d.cause == cause; }));
  }
};

/// Internal constants of the transformation, all derived from (n, eps).
struct CarvingParams {
  double eps = 0.5;
  double eps_inner = 0.25;          // weak-carving budget per iteration
  std::uint32_t iterations = 1;     // ceil(log2 n), at least 1
  std::uint32_t growth_cap = 1;     // ceil(ln n / -ln(1 - eps/2)) + 1
  double ratio_threshold = 4.0 / 3; // 1 / (1 - eps/2)

  static CarvingParams from(std::size_t n, double eps) {
    detail::check_eps(eps);
    CarvingParams p;
    p.eps = eps;
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    p.iterations = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(std::log2(nn))));
    p.eps_inner = eps / (2.0 * p.iterations);
    p.growth_cap = static_cast<std::uint32_t>(std::ceil(std::log(nn) / -std::log1p(-eps / 2.0))) + 1;
    p.ratio_threshold = 1.0 / (1.0 - eps / 2.0);
    return p;
  }
};

struct GrownBall {
  std::uint32_t radius = 0;  // r*
  std::vector<NodeId> ball;
  std::vector<NodeId> boundary;
};

/// Smallest r in [r_start, r_start + K] with |B_r(a)| >= (1 - eps/2)|B_{r+1}(a)|,
/// measured inside the alive subgraph.
inline GrownBall grow_ball(const Graph& g, const NodeMask& mask, NodeId center, std::uint32_t r_start,
                           std::uint32_t growth_cap, double eps) {
  if (!mask.alive(center)) throw std::invalid_argument("grow_ball: center is not alive");
  if (growth_cap < 1) throw std::invalid_argument("grow_ball: growth cap must be >= 1");
  BfsWorkspace ws(g.num_nodes());
  const std::uint32_t r_limit = r_start + growth_cap;
  ws.run(g, mask, std::span<const NodeId>(&center, 1), r_limit + 1);
  const double keep = 1.0 - eps / 2.0;
  for (std::uint32_t r = r_start; r <= r_limit; ++r) {
    auto inner = static_cast<double>(ws.ball_size(r));
    auto outer = static_cast<double>(ws.ball_size(r + 1));
    if (inner >= keep * outer) {
      GrownBall out;
      out.radius = r;
      auto ball = ws.ball(r);
      auto shell = ws.layer(r + 1);
      out.ball.assign(ball.begin(), ball.end());
      out.boundary.assign(shell.begin(), shell.end());
      std::sort(out.ball.begin(), out.ball.end());
      std::sort(out.boundary.begin(), out.boundary.end());
      return out;
    }
  }
  throw InvariantViolation("grow_ball: no sparse layer within the growth window");
}

/// Index of the unique cluster with more than `size_threshold` nodes.
inline std::optional<std::size_t> detect_giant(const WeakCarving& carving, double size_threshold) {
  if (size_threshold < 1.0) throw std::invalid_argument("detect_giant: threshold must be >= 1");
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < carving.clusters.size(); ++i) {
    if (static_cast<double>(carving.clusters[i].nodes.size()) > size_threshold) {
      if (found) throw InvariantViolation("detect_giant: two clusters exceed the size threshold");
      found = i;
    }
  }
  return found;
}

namespace detail {

struct ComponentStep {
  bool processed = false;
  RoundLedger ledger;
  std::optional<StrongCluster> ball;
  std::optional<BallRecord> record;
  std::vector<DeadNode> dead;
  std::vector<std::vector<NodeId>> next;
  std::uint32_t declared_depth = 0;
};

inline std::vector<std::vector<NodeId>> components_of(const Graph& g, std::vector<NodeId> nodes) {
  if (nodes.empty()) return {};
  return connected_components(g, NodeMask::from_nodes(g.num_nodes(), nodes));
}

template <class BlackBox>
ComponentStep carve_component(const Graph& g, const std::vector<NodeId>& comp, const CarvingParams& params,
                              double size_threshold, std::uint32_t iteration, std::uint64_t seed,
                              BlackBox& black_box) {
  ComponentStep step;
  step.processed = true;
  const NodeMask comp_mask = NodeMask::from_nodes(g.num_nodes(), comp);
  WeakCarveResult weak =
      black_box(g, comp_mask, params.eps_inner, derive_seed(seed, {iteration, comp.front()}));
  step.ledger = std::move(weak.ledger);
  step.declared_depth = weak.carving.declared_depth;
  step.ledger.charge_steiner_aggregate(weak.carving.declared_depth, std::max<std::uint32_t>(1, weak.carving.declared_congestion));

  std::vector<std::uint8_t> removed(g.num_nodes(), 0);
  if (weak.carving.clusters.empty()) {
    // Only a broken black box gets here; the verifier reports the budget breach.
    for (NodeId v : comp) step.dead.push_back({v, DeadCause::BlackBox});
    return step;
  }
  auto giant = detect_giant(weak.carving, std::max(1.0, size_threshold));
  if (!giant) {
    for (NodeId v : weak.carving.dead) {
      step.dead.push_back({v, DeadCause::BlackBox});
      removed[v] = 1;
    }
  } else {
    const WeakCluster& cluster = weak.carving.clusters[*giant];
    const NodeId center = cluster.tree.root;
    const std::uint32_t r_start = steiner_depth(cluster.tree);
    GrownBall grown = grow_ball(g, comp_mask, center, r_start, params.growth_cap, params.eps);
    step.ledger.charge_bfs(grown.radius + 1);
    step.record = BallRecord{iteration, center, r_start, grown.radius};
    for (NodeId v : grown.ball) removed[v] = 1;
    for (NodeId v : grown.boundary) {
      removed[v] = 1;
      step.dead.push_back({v, DeadCause::Boundary});
    }
    StrongCluster ball;
    ball.center = center;
    ball.radius = eccentricity(g, NodeMask::from_nodes(g.num_nodes(), grown.ball), center);
    ball.nodes = std::move(grown.ball);
    step.ball = std::move(ball);
  }
  std::vector<NodeId> rest;
  for (NodeId v : comp) {
    if (!removed[v]) rest.push_back(v);
  }
  step.next = components_of(g, std::move(rest));
  return step;
}

}  // namespace detail

/// Strong-diameter ball carving from any weak-diameter black box.
///
/// Each iteration halves the size bound on the alive components. A component
/// still above the bound is carved weakly; if one weak cluster exceeds the
/// bound, a BFS ball around its Steiner root is grown to the first layer that
/// adds at most an eps/2 fraction, the ball becomes a final cluster and its
/// outer layer is discarded. Otherwise the weakly discarded nodes die and the
/// component falls apart into pieces of weak clusters. Survivors at the end
/// are single nodes.
template <class BlackBox>
StrongCarving carve_strong(const Graph& g, const NodeMask& mask, double eps, std::uint64_t seed,
                           BlackBox black_box) {
  detail::check_eps(eps);
  StrongCarving out;
  if (mask.empty()) return out;
  const CarvingParams params = CarvingParams::from(mask.count(), eps);
  const double n = static_cast<double>(mask.count());
  out.growth_cap = params.growth_cap;

  std::vector<std::vector<NodeId>> active = connected_components(g, mask);
  double bound = n;  // n / 2^{i-1}
  for (std::uint32_t i = 1; i <= params.iterations; ++i) {
    const double threshold = bound / 2.0;
    std::vector<detail::ComponentStep> steps(active.size());
    for (const auto& comp : active) {
      if (static_cast<double>(comp.size()) > bound) {
        throw InvariantViolation("carve_strong: component exceeds n/2^(i-1) at iteration " + std::to_string(i));
      }
      out.trace.push_back({i, comp.size()});
    }
    parallel_for(active.size(), [&](std::size_t c) {
      if (static_cast<double>(active[c].size()) > threshold) {
        steps[c] = detail::carve_component(g, active[c], params, threshold, i, seed, black_box);
      }
    });
    std::vector<std::vector<NodeId>> next;
    std::vector<RoundLedger> ledgers;
    for (std::size_t c = 0; c < active.size(); ++c) {
      auto& step = steps[c];
      if (!step.processed) {
        next.push_back(std::move(active[c]));
        continue;
      }
      ledgers.push_back(std::move(step.ledger));
      out.black_box_depth = std::max(out.black_box_depth, step.declared_depth);
      if (step.ball) out.clusters.push_back(std::move(*step.ball));
      if (step.record) out.balls.push_back(*step.record);
      out.dead.insert(out.dead.end(), step.dead.begin(), step.dead.end());
      for (auto& piece : step.next) next.push_back(std::move(piece));
    }
    if (!ledgers.empty()) out.ledger.append(merge_parallel(ledgers));
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    active = std::move(next);
    bound = threshold;
  }
  for (auto& comp : active) {
    if (comp.size() != 1) throw InvariantViolation("carve_strong: non-trivial component left after the last iteration");
    const NodeId v = comp.front();
    out.clusters.push_back({{v}, v, 0});
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const StrongCluster& a, const StrongCluster& b) { return a.nodes.front() < b.nodes.front(); });
  std::sort(out.dead.begin(), out.dead.end(), [](const DeadNode& a, const DeadNode& b) { return a.node < b.node; });
  out.diameter_bound = 2ULL * out.black_box_depth + 2ULL * out.growth_cap;
  return out;
}

/// Type-erased strong-diameter carver: (graph, mask, eps, seed) -> carving.
using StrongCarver = std::function<StrongCarving(const Graph&, const NodeMask&, double, std::uint64_t)>;

inline StrongCarver strong_carver(WeakCarver black_box) {
  return [bb = std::move(black_box)](const Graph& g, const NodeMask& mask, double eps, std::uint64_t seed) {
    return carve_strong(g, mask, eps, seed, bb);
  };
}

inline StrongCarver strong_carver(WeakImpl impl) { return strong_carver(weak_carver(impl)); }

}  // namespace netdecomp
