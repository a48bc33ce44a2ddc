#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netdecomp/graph.hpp"
#include "netdecomp/rng.hpp"

namespace netdecomp {

inline Graph make_path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(static_cast<NodeId>(v - 1), static_cast<NodeId>(v));
  return Graph::from_edges(n, edges);
}

/// rows x cols grid, node (r, c) has id r * cols + c.
inline Graph make_grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

inline Graph make_complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  return Graph::from_edges(n, edges);
}

/// Star with center 0 and `leaves` leaves.
inline Graph make_star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.emplace_back(0, static_cast<NodeId>(v));
  return Graph::from_edges(leaves + 1, edges);
}

/// Erdos-Renyi G(n, p) using geometric skips over the pair sequence.
inline Graph make_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p == 0.0 || n < 2) return Graph::from_edges(n, edges);
  if (p == 1.0) return make_complete(n);
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  // Walk pairs (v, w) with w < v.
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    double r = uniform01(rng);
    w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

/// Uniform simple degree-regular graph: configuration model, rejecting any
/// pairing with a self-loop or multi-edge.
inline Graph make_regular(std::size_t n, std::size_t degree, std::uint64_t seed, int max_attempts = 200000) {
  if ((n * degree) % 2 != 0) throw std::invalid_argument("regular: n * degree must be even");
  if (degree >= n && !(n == 0 || degree == 0)) throw std::invalid_argument("regular: degree must be < n");
  if (degree == 0) return Graph::from_edges(n, {});
  Rng rng(seed);
  std::vector<NodeId> stubs(n * degree);
  std::vector<Edge> edges;
  std::vector<std::vector<NodeId>> adj(n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<NodeId>(i / degree);
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);
    edges.clear();
    for (auto& a : adj) a.clear();
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      NodeId u = std::min(stubs[i], stubs[i + 1]);
      NodeId v = std::max(stubs[i], stubs[i + 1]);
      if (u == v) {
        ok = false;
        break;
      }
      for (NodeId x : adj[u]) {
        if (x == v) {
          ok = false;
          break;
        }
      }
      adj[u].push_back(v);
      edges.emplace_back(u, v);
    }
    if (ok) return Graph::from_edges(n, edges);
  }
  throw std::runtime_error("regular: no simple pairing found within the attempt budget");
}

struct BarrierSpec {
  std::size_t base_nodes = 0;
  std::size_t degree = 3;
  std::size_t subdivision_length = 1;
  std::uint64_t seed = 0;

  std::size_t expected_nodes() const {
    return base_nodes + (base_nodes * degree / 2) * (subdivision_length - 1);
  }
};

/// Replaces every edge of `base` by a path of `length` edges. Base nodes keep
/// their ids; internal path nodes are numbered from base.num_nodes() upward in
/// canonical edge order, running from the smaller endpoint to the larger.
inline Graph subdivide(const Graph& base, std::size_t length) {
  if (length < 1) throw std::invalid_argument("subdivision length must be >= 1");
  std::vector<Edge> edges;
  auto next = static_cast<NodeId>(base.num_nodes());
  for (auto [u, v] : base.edges()) {
    NodeId prev = u;
    for (std::size_t k = 1; k < length; ++k) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(std::min(prev, v), std::max(prev, v));
  }
  return Graph::from_edges(next, edges);
}

/// Subdivided random regular expander.
inline Graph make_barrier(const BarrierSpec& spec) {
  if (spec.degree < 3) throw std::invalid_argument("barrier: degree must be >= 3");
  if (spec.subdivision_length < 1) throw std::invalid_argument("barrier: subdivision length must be >= 1");
  return subdivide(make_regular(spec.base_nodes, spec.degree, spec.seed), spec.subdivision_length);
}

enum class GraphKind { Path, Grid, Gnp, RegularExpander, Barrier, Complete, Star };

struct GenParams {
  std::size_t n = 0;           // path / gnp / regular / complete node count, star leaves
  std::size_t rows = 0;        // grid
  std::size_t cols = 0;        // grid
  double p = 0.0;              // gnp
  std::size_t degree = 4;      // regular, barrier base
  std::size_t base_nodes = 0;  // barrier
  std::size_t subdivision = 1; // barrier
};

inline std::optional<GraphKind> parse_graph_kind(std::string_view s) {
  if (s == "path") return GraphKind::Path;
  if (s == "grid") return GraphKind::Grid;
  if (s == "gnp") return GraphKind::Gnp;
  if (s == "regular" || s == "regular_expander") return GraphKind::RegularExpander;
  if (s == "barrier") return GraphKind::Barrier;
  if (s == "complete") return GraphKind::Complete;
  if (s == "star") return GraphKind::Star;
  return std::nullopt;
}

inline Graph generate(GraphKind kind, const GenParams& params, std::uint64_t seed) {
  switch (kind) {
    case GraphKind::Path:
      return make_path(params.n);
    case GraphKind::Grid:
      return make_grid(params.rows, params.cols);
    case GraphKind::Gnp:
      return make_gnp(params.n, params.p, seed);
    case GraphKind::RegularExpander:
      return make_regular(params.n, params.degree, seed);
    case GraphKind::Barrier:
      return make_barrier({params.base_nodes, params.degree, params.subdivision, seed});
    case GraphKind::Complete:
      return make_complete(params.n);
    case GraphKind::Star:
      return make_star(params.n);
  }
  throw std::invalid_argument("unknown graph kind");
}

}  // namespace netdecomp
