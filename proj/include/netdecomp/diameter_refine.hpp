#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netdecomp/bfs.hpp"
#include "netdecomp/graph.hpp"
#include "netdecomp/ledger.hpp"
#include "netdecomp/parallel.hpp"
#include "netdecomp/rng.hpp"
#include "netdecomp/strong_carving.hpp"

namespace netdecomp {

// ---------------------------------------------------------------------------
// Cut-or-cluster

struct CutOrClusterOptions {
  double layer_budget = 8.0;               // c_L
  std::optional<std::size_t> scale_nodes;  // n used in ln n and the halving bound; defaults to the input size
};

/// Thresholds of the cut-or-cluster procedure for a given scale n.
///   rho          1 + eps / (c_L ln n), the layer growth accepted as sparse
///   cut_threshold  b - a at or above which a sparse layer must exist in [a, b-1)
///   window       K_L, the final growth window length
///   max_loops    H = ceil(log2 n) + 1 bound on loop iterations
struct CutOrClusterConfig {
  double eps = 0.5;
  double layer_budget = 8.0;
  double log_n = 1.0;
  double rho = 1.0;
  std::uint32_t cut_threshold = 2;
  std::uint32_t window = 1;
  std::uint32_t max_loops = 1;

  static CutOrClusterConfig from(std::size_t scale, double eps, double layer_budget = 8.0) {
    detail::check_eps(eps);
    if (!(layer_budget > 0.0)) throw std::invalid_argument("layer budget must be positive");
    CutOrClusterConfig c;
    c.eps = eps;
    c.layer_budget = layer_budget;
    c.log_n = std::log(static_cast<double>(std::max<std::size_t>(scale, 3)));
    const double step = eps / (layer_budget * c.log_n);
    c.rho = 1.0 + step;
    c.cut_threshold = static_cast<std::uint32_t>(std::ceil(std::log(2.0) * layer_budget * c.log_n / eps)) + 2;
    c.window = static_cast<std::uint32_t>(std::ceil(std::log(3.0) / std::log1p(step))) + 1;
    c.max_loops = static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(scale, 1))))) + 1;
    return c;
  }

  /// Largest separator or halo the procedure may produce on n nodes.
  double sparse_layer_bound(std::size_t n) const { return (rho - 1.0) * static_cast<double>(n); }

  /// Strong-diameter bound on any component outcome: 2 (H cut_threshold + K_L).
  std::uint64_t diameter_bound() const {
    return 2ULL * (static_cast<std::uint64_t>(max_loops) * cut_threshold + window);
  }
};

struct BalancedCut {
  std::vector<NodeId> side1;      // B_r*(S)
  std::vector<NodeId> side2;      // everything past layer r*+1
  std::vector<NodeId> separator;  // layer r*+1
};

struct LargeComponent {
  std::vector<NodeId> nodes;  // U = B_r*(v)
  std::vector<NodeId> halo;   // nodes outside U adjacent to U
  NodeId center = 0;
  std::uint32_t radius = 0;   // r*
  std::uint32_t a_final = 0;
};

using CutOrClusterOutcome = std::variant<BalancedCut, LargeComponent>;

struct HalvingState {
  std::vector<NodeId> seeds;  // S, sorted by node id
  std::uint32_t a = 0;        // smallest r with |B_r(S)| >= n/3
  std::uint32_t b = 0;        // smallest r with |B_r(S)| >= 2n/3
  std::uint32_t iteration = 1;
};

struct CutOrClusterResult {
  CutOrClusterOutcome outcome;
  RoundLedger ledger;
  CutOrClusterConfig config;
  std::vector<HalvingState> history;  // state at the start of every loop iteration (seed lists dropped)
  std::uint32_t diameter_bound = 0;   // 2 (a_final + K_L) for a component outcome
};

/// Index in [lo, lo + sizes.size() - 2] minimizing sizes[k+1] / sizes[k],
/// where sizes[k] = |B_{lo+k}|. Ties go to the smallest index.
inline std::uint32_t min_ratio_layer(std::span<const std::size_t> sizes, std::uint32_t lo) {
  if (sizes.size() < 2) throw std::invalid_argument("min_ratio_layer: empty range");
  std::size_t best = 0;
  for (std::size_t k = 1; k + 1 < sizes.size(); ++k) {
    if (sizes[k] == 0) throw std::invalid_argument("min_ratio_layer: sizes must be positive");
    // sizes[k+1]/sizes[k] < sizes[best+1]/sizes[best], cross-multiplied.
    unsigned __int128 lhs = static_cast<unsigned __int128>(sizes[k + 1]) * sizes[best];
    unsigned __int128 rhs = static_cast<unsigned __int128>(sizes[best + 1]) * sizes[k];
    if (lhs < rhs) best = k;
  }
  if (sizes[best] == 0) throw std::invalid_argument("min_ratio_layer: sizes must be positive");
  return lo + static_cast<std::uint32_t>(best);
}

namespace detail {

/// Preorder rank of every alive node in the BFS tree from the smallest alive
/// id, children visited in ascending id order.
inline std::vector<std::uint32_t> preorder_ranks(const Graph& g, const NodeMask& mask) {
  std::vector<std::uint32_t> rank(g.num_nodes(), kUnreached);
  if (mask.empty()) return rank;
  BfsWorkspace ws(g.num_nodes());
  NodeId root = mask.nodes().front();
  ws.run(g, mask, std::span<const NodeId>(&root, 1));
  std::vector<std::vector<NodeId>> children(g.num_nodes());
  for (NodeId v : ws.order()) {
    if (v != root) children[ws.parent(v)].push_back(v);
  }
  std::vector<NodeId> stack{root};
  std::uint32_t next = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    rank[v] = next++;
    auto& ch = children[v];
    std::sort(ch.begin(), ch.end());
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return rank;
}

inline std::pair<std::uint32_t, std::uint32_t> neighborhood_radii(const Graph& g, const NodeMask& mask,
                                                                  std::span<const NodeId> seeds, BfsWorkspace& ws) {
  ws.run(g, mask, seeds);
  const std::size_t n = mask.count();
  std::uint32_t a = kUnreached;
  std::uint32_t b = kUnreached;
  for (std::uint32_t r = 0; r <= ws.depth(); ++r) {
    std::size_t size = ws.ball_size(r);
    if (a == kUnreached && 3 * size >= n) a = r;
    if (3 * size >= 2 * n) {
      b = r;
      break;
    }
  }
  if (a == kUnreached || b == kUnreached) throw std::invalid_argument("cut_or_cluster: input is disconnected");
  return {a, b};
}

}  // namespace detail

/// (a, b) for the seed set S: smallest radii whose neighborhoods reach n/3
/// and 2n/3 alive nodes.
inline std::pair<std::uint32_t, std::uint32_t> neighborhood_radii(const Graph& g, const NodeMask& mask,
                                                                  std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("no sources");
  BfsWorkspace ws(g.num_nodes());
  return detail::neighborhood_radii(g, mask, seeds, ws);
}

/// Splits S into its first and second half in preorder and keeps the half
/// whose n/3-radius is smaller (ties keep the second half). The kept radius
/// never exceeds the old b.
inline HalvingState halve_S(const Graph& g, const NodeMask& mask, const HalvingState& state,
                            std::span<const std::uint32_t> preorder) {
  if (state.seeds.size() < 2) throw std::invalid_argument("halve_S: |S| must be >= 2");
  std::vector<NodeId> sorted = state.seeds;
  std::sort(sorted.begin(), sorted.end(), [&](NodeId x, NodeId y) { return preorder[x] < preorder[y]; });
  const std::size_t half = sorted.size() / 2;
  std::vector<NodeId> first(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<NodeId> second(sorted.begin() + static_cast<std::ptrdiff_t>(half), sorted.end());
  BfsWorkspace ws(g.num_nodes());
  auto [a1, b1] = detail::neighborhood_radii(g, mask, first, ws);
  auto [a2, b2] = detail::neighborhood_radii(g, mask, second, ws);
  if (std::min(a1, a2) > state.b) throw InvariantViolation("halve_S: min(a1, a2) > b");
  HalvingState next;
  next.iteration = state.iteration + 1;
  if (a1 < a2) {
    next.seeds = std::move(first);
    next.a = a1;
    next.b = b1;
  } else {
    next.seeds = std::move(second);
    next.a = a2;
    next.b = b2;
  }
  std::sort(next.seeds.begin(), next.seeds.end());
  return next;
}

inline HalvingState halve_S(const Graph& g, const NodeMask& mask, const HalvingState& state) {
  auto ranks = detail::preorder_ranks(g, mask);
  return halve_S(g, mask, state, ranks);
}

/// Either a balanced sparse cut or a large low-diameter ball with a thin halo,
/// on a connected alive subgraph. Loop: while the gap b - a is small, halve S
/// keeping the half whose neighborhood reaches n/3 sooner; once the gap is
/// wide, cut at the sparsest layer between a and b. If S shrinks to one node
/// without a wide gap, grow a ball around it to the sparsest layer of the
/// final window.
inline CutOrClusterResult cut_or_cluster(const Graph& g, const NodeMask& mask, double eps,
                                         const CutOrClusterOptions& opts = {}) {
  detail::check_eps(eps);
  if (mask.empty()) throw std::invalid_argument("cut_or_cluster: empty input");
  const std::size_t n = mask.count();
  CutOrClusterResult res;
  res.config = CutOrClusterConfig::from(std::max(n, opts.scale_nodes.value_or(n)), eps, opts.layer_budget);
  const auto& cfg = res.config;

  BfsWorkspace ws(g.num_nodes());
  const NodeId leader = mask.nodes().front();
  ws.run(g, mask, std::span<const NodeId>(&leader, 1));
  if (ws.reached() != n) throw std::invalid_argument("cut_or_cluster: input is disconnected");
  const std::uint64_t diameter_up = 2ULL * ws.depth();

  if (n <= 2) {
    LargeComponent comp;
    comp.nodes.assign(mask.nodes().begin(), mask.nodes().end());
    comp.center = leader;
    comp.radius = static_cast<std::uint32_t>(n - 1);
    res.ledger.charge_leader(diameter_up);
    res.diameter_bound = static_cast<std::uint32_t>(n - 1);
    res.outcome = std::move(comp);
    return res;
  }

  const auto preorder = detail::preorder_ranks(g, mask);
  HalvingState state;
  state.seeds.assign(mask.nodes().begin(), mask.nodes().end());
  std::tie(state.a, state.b) = detail::neighborhood_radii(g, mask, state.seeds, ws);
  std::uint32_t prev_a = state.a;

  while (true) {
    const std::size_t cap = (n + (std::size_t{1} << std::min<std::uint32_t>(state.iteration - 1, 63)) - 1) >>
                            std::min<std::uint32_t>(state.iteration - 1, 63);
    if (state.seeds.size() > cap) throw InvariantViolation("cut_or_cluster: |S| exceeds ceil(n / 2^(i-1))");
    if (state.a > prev_a + cfg.cut_threshold) throw InvariantViolation("cut_or_cluster: a grew by more than the cut threshold");
    if (state.iteration > cfg.max_loops) throw InvariantViolation("cut_or_cluster: too many halving iterations");
    prev_a = state.a;
    res.history.push_back({{}, state.a, state.b, state.iteration});
    res.ledger.charge("cut-or-cluster-iteration", 3 * diameter_up);

    if (state.b - state.a >= cfg.cut_threshold) {
      ws.run(g, mask, state.seeds, state.b);
      std::vector<std::size_t> sizes;
      for (std::uint32_t r = state.a; r <= state.b - 1; ++r) sizes.push_back(ws.ball_size(r));
      const std::uint32_t r_star = min_ratio_layer(sizes, state.a);
      const double ratio = static_cast<double>(ws.ball_size(r_star + 1)) / static_cast<double>(ws.ball_size(r_star));
      if (ratio > cfg.rho * (1.0 + 1e-12)) throw InvariantViolation("cut_or_cluster: no sparse layer between a and b");
      BalancedCut cut;
      auto inner = ws.ball(r_star);
      auto shell = ws.layer(r_star + 1);
      cut.side1.assign(inner.begin(), inner.end());
      cut.separator.assign(shell.begin(), shell.end());
      std::vector<std::uint8_t> taken(g.num_nodes(), 0);
      for (NodeId v : ws.ball(r_star + 1)) taken[v] = 1;
      for (NodeId v : mask.nodes()) {
        if (!taken[v]) cut.side2.push_back(v);
      }
      std::sort(cut.side1.begin(), cut.side1.end());
      std::sort(cut.separator.begin(), cut.separator.end());
      res.outcome = std::move(cut);
      return res;
    }
    if (state.seeds.size() == 1) break;
    state = halve_S(g, mask, state, preorder);
  }

  const NodeId v = state.seeds.front();
  const std::uint32_t last = state.a + cfg.window;
  ws.run(g, mask, std::span<const NodeId>(&v, 1), last);
  std::vector<std::size_t> sizes;
  for (std::uint32_t r = state.a; r <= last; ++r) sizes.push_back(ws.ball_size(r));
  const std::uint32_t r_star = min_ratio_layer(sizes, state.a);
  const double ratio = static_cast<double>(ws.ball_size(r_star + 1)) / static_cast<double>(ws.ball_size(r_star));
  if (ratio > cfg.rho * (1.0 + 1e-12)) throw InvariantViolation("cut_or_cluster: no sparse layer in the final window");
  res.ledger.charge_bfs(diameter_up);

  LargeComponent comp;
  auto ball = ws.ball(r_star);
  auto shell = ws.layer(r_star + 1);
  comp.nodes.assign(ball.begin(), ball.end());
  comp.halo.assign(shell.begin(), shell.end());
  std::sort(comp.nodes.begin(), comp.nodes.end());
  std::sort(comp.halo.begin(), comp.halo.end());
  comp.center = v;
  comp.radius = r_star;
  comp.a_final = state.a;
  res.diameter_bound = 2 * (state.a + cfg.window);
  res.outcome = std::move(comp);
  return res;
}

// ---------------------------------------------------------------------------
// Recursive refinement of a strong carving

struct RefineOptions {
  double layer_budget = 8.0;
};

/// Number of recursion levels allowed: ceil(ln n / ln(3/2)), at least 1.
inline std::uint32_t refine_max_levels(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(std::log(nn) / std::log(1.5))));
}

/// Diameter bound of every cluster refine produces on n nodes.
inline std::uint64_t refined_diameter_bound(std::size_t n, double eps, double layer_budget = 8.0) {
  return CutOrClusterConfig::from(n, eps, layer_budget).diameter_bound();
}

namespace detail {

struct RefinePartResult {
  RoundLedger ledger;
  std::vector<StrongCluster> clusters;
  std::vector<DeadNode> dead;
  std::vector<std::vector<NodeId>> next;
};

inline RefinePartResult refine_part(const Graph& g, const std::vector<NodeId>& part, double eps, double eps_level,
                                    std::uint64_t seed, std::uint32_t level, const CutOrClusterOptions& cc_opts,
                                    const StrongCarver& carver) {
  RefinePartResult out;
  if (part.size() == 1) {
    out.clusters.push_back({part, part.front(), 0});
    return out;
  }
  const NodeMask part_mask = NodeMask::from_nodes(g.num_nodes(), part);
  StrongCarving carved = carver(g, part_mask, eps_level, derive_seed(seed, {level, part.front()}));
  out.ledger = std::move(carved.ledger);
  out.dead = std::move(carved.dead);

  std::vector<RoundLedger> cluster_ledgers;
  for (auto& cluster : carved.clusters) {
    if (cluster.nodes.size() == 1) {
      out.clusters.push_back(std::move(cluster));
      continue;
    }
    const NodeMask cmask = NodeMask::from_nodes(g.num_nodes(), cluster.nodes);
    CutOrClusterResult cc = cut_or_cluster(g, cmask, eps, cc_opts);
    cluster_ledgers.push_back(std::move(cc.ledger));
    if (auto* cut = std::get_if<BalancedCut>(&cc.outcome)) {
      for (NodeId v : cut->separator) out.dead.push_back({v, DeadCause::Separator});
      out.next.push_back(std::move(cut->side1));
      out.next.push_back(std::move(cut->side2));
    } else {
      auto& comp = std::get<LargeComponent>(cc.outcome);
      std::vector<std::uint8_t> gone(g.num_nodes(), 0);
      for (NodeId v : comp.nodes) gone[v] = 1;
      for (NodeId v : comp.halo) {
        gone[v] = 1;
        out.dead.push_back({v, DeadCause::Halo});
      }
      std::vector<NodeId> rest;
      for (NodeId v : cluster.nodes) {
        if (!gone[v]) rest.push_back(v);
      }
      StrongCluster kept;
      kept.center = comp.center;
      kept.radius = eccentricity(g, NodeMask::from_nodes(g.num_nodes(), comp.nodes), comp.center);
      kept.nodes = std::move(comp.nodes);
      out.clusters.push_back(std::move(kept));
      if (!rest.empty()) out.next.push_back(std::move(rest));
    }
  }
  if (!cluster_ledgers.empty()) out.ledger.append(merge_parallel(cluster_ledgers));
  return out;
}

}  // namespace detail

/// Turns any strong-diameter carving into one whose clusters have strong
/// diameter O(log^2 n / eps). Each level runs the carver with a small budget
/// on every open part, then cut-or-cluster on every resulting cluster: a cut
/// recurses on both sides, a component is kept and the rest of the cluster
/// outside its halo recurses. Every recursive part has at most 2/3 of the
/// nodes of its parent cluster.
inline StrongCarving refine(const Graph& g, const NodeMask& mask, double eps, std::uint64_t seed,
                            const StrongCarver& carver, const RefineOptions& opts = {}) {
  detail::check_eps(eps);
  StrongCarving out;
  if (mask.empty()) return out;
  const std::size_t n0 = mask.count();
  const std::uint32_t max_levels = refine_max_levels(n0);
  const double eps_level = eps / (4.0 * max_levels);
  CutOrClusterOptions cc_opts;
  cc_opts.layer_budget = opts.layer_budget;
  cc_opts.scale_nodes = n0;
  const auto cfg = CutOrClusterConfig::from(n0, eps, opts.layer_budget);

  std::vector<std::vector<NodeId>> parts;
  parts.emplace_back(mask.nodes().begin(), mask.nodes().end());
  double size_cap = static_cast<double>(n0);
  for (std::uint32_t level = 1; !parts.empty(); ++level) {
    if (level > max_levels + 1) throw InvariantViolation("refine: recursion deeper than the level bound");
    for (const auto& part : parts) {
      if (static_cast<double>(part.size()) > size_cap * (1.0 + 1e-9)) {
        throw InvariantViolation("refine: part larger than (2/3)^(level-1) n");
      }
      out.trace.push_back({level, part.size()});
    }
    std::vector<detail::RefinePartResult> results(parts.size());
    parallel_for(parts.size(), [&](std::size_t i) {
      results[i] = detail::refine_part(g, parts[i], eps, eps_level, seed, level, cc_opts, carver);
    });
    std::vector<RoundLedger> ledgers;
    std::vector<std::vector<NodeId>> next;
    for (auto& r : results) {
      ledgers.push_back(std::move(r.ledger));
      for (auto& c : r.clusters) out.clusters.push_back(std::move(c));
      out.dead.insert(out.dead.end(), r.dead.begin(), r.dead.end());
      for (auto& p : r.next) next.push_back(std::move(p));
    }
    out.ledger.append(merge_parallel(ledgers));
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    parts = std::move(next);
    size_cap *= 2.0 / 3.0;
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const StrongCluster& a, const StrongCluster& b) { return a.nodes.front() < b.nodes.front(); });
  std::sort(out.dead.begin(), out.dead.end(), [](const DeadNode& a, const DeadNode& b) { return a.node < b.node; });
  out.growth_cap = cfg.window;
  out.diameter_bound = cfg.diameter_bound();
  return out;
}

inline StrongCarver refined_carver(StrongCarver inner, RefineOptions opts = {}) {
  return [inner = std::move(inner), opts](const Graph& g, const NodeMask& mask, double eps, std::uint64_t seed) {
    return refine(g, mask, eps, seed, inner, opts);
  };
}

}  // namespace netdecomp
