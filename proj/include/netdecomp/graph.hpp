#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netdecomp {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Raised when an internal guarantee of an algorithm fails at runtime.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Immutable undirected simple graph in CSR form. Node ids are 0..n-1 and
/// every neighbor list is sorted ascending.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds from an edge list. Duplicate edges (in either orientation) are
  /// rejected, as are self-loops and out-of-range endpoints.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    if (n > std::numeric_limits<NodeId>::max()) throw std::invalid_argument("graph too large");
    std::vector<std::size_t> degree(n, 0);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
      ++degree[u];
      ++degree[v];
    }
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
      g.targets_[fill[u]++] = v;
      g.targets_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
      auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      std::sort(first, last);
      if (std::adjacent_find(first, last) != last) {
        throw std::invalid_argument("multi-edge at node " + std::to_string(v));
      }
    }
    return g;
  }

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (NodeId u = 0; u < num_nodes(); ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Alive-node subset of a graph. Keeps both a bitmap for O(1) membership and
/// the sorted member list so that work over a small subset stays proportional
/// to its size.
class NodeMask {
 public:
  NodeMask() = default;

  static NodeMask all(std::size_t n) {
    NodeMask m;
    m.bits_.assign(n, 1);
    m.members_.resize(n);
    for (std::size_t v = 0; v < n; ++v) m.members_[v] = static_cast<NodeId>(v);
    return m;
  }

  static NodeMask none(std::size_t n) {
    NodeMask m;
    m.bits_.assign(n, 0);
    return m;
  }

  /// `nodes` may be in any order; duplicates are ignored.
  static NodeMask from_nodes(std::size_t n, std::span<const NodeId> nodes) {
    NodeMask m;
    m.bits_.assign(n, 0);
    m.members_.reserve(nodes.size());
    for (NodeId v : nodes) {
      if (v >= n) throw std::invalid_argument("mask node out of range");
      if (!m.bits_[v]) {
        m.bits_[v] = 1;
        m.members_.push_back(v);
      }
    }
    std::sort(m.members_.begin(), m.members_.end());
    return m;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool alive(NodeId v) const { return v < bits_.size() && bits_[v] != 0; }
  std::span<const NodeId> nodes() const { return members_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::vector<NodeId> members_;
};

// ---------------------------------------------------------------------------
// Text format: "n m" header, then m lines "u v" with u < v.

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_text(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline Graph read_graph(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw std::runtime_error("graph header must be \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v)) throw std::runtime_error("truncated edge list at edge " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error("edge " + std::to_string(i) + " out of range");
    }
    if (u >= v) throw std::runtime_error("edge " + std::to_string(i) + " must satisfy u < v");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  std::string trailing;
  if (in >> trailing) throw std::runtime_error("unexpected trailing content: " + trailing);
  try {
    return Graph::from_edges(static_cast<std::size_t>(n), edges);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream is(text);
  return read_graph(is);
}

}  // namespace netdecomp
