#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "netdecomp/decomposition.hpp"
#include "netdecomp/diameter_refine.hpp"
#include "netdecomp/generators.hpp"
#include "netdecomp/parallel.hpp"
#include "netdecomp/rng.hpp"
#include "netdecomp/strong_carving.hpp"
#include "netdecomp/verify.hpp"

namespace netdecomp {

/// trivial: weak→strong transformation over the one-cluster-per-component box.
/// strong:  weak→strong transformation over the randomized weak carving.
/// refined: strong, followed by the diameter refinement.
enum class Algorithm { Trivial, Strong, Refined };

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "trivial") return Algorithm::Trivial;
  if (s == "strong") return Algorithm::Strong;
  if (s == "refined") return Algorithm::Refined;
  return std::nullopt;
}

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Trivial:
      return "trivial";
    case Algorithm::Strong:
      return "strong";
    case Algorithm::Refined:
      return "refined";
  }
  return "unknown";
}

inline StrongCarver make_carver(Algorithm a) {
  switch (a) {
    case Algorithm::Trivial:
      return strong_carver(WeakImpl::Trivial);
    case Algorithm::Strong:
      return strong_carver(WeakImpl::LinialSaks);
    case Algorithm::Refined:
      return refined_carver(strong_carver(WeakImpl::LinialSaks));
  }
  throw std::invalid_argument("unknown algorithm");
}

/// Largest exact strong diameter over the given node sets.
template <class Clusters, class Proj>
std::uint32_t max_cluster_diameter(const Graph& g, const Clusters& clusters, Proj nodes_of) {
  std::vector<std::uint32_t> diam(clusters.size(), 0);
  parallel_for(clusters.size(), [&](std::size_t i) {
    const auto& nodes = nodes_of(clusters[i]);
    if (nodes.size() > 1) diam[i] = induced_diameter(g, nodes).diameter;
  });
  return diam.empty() ? 0 : *std::max_element(diam.begin(), diam.end());
}

struct RunRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::string algo;
  std::uint32_t colors = 0;
  std::uint32_t max_diameter = 0;
  double dead_fraction = 0.0;  // discarded share of the first carving iteration
  std::uint64_t rounds = 0;
  double wall_ms = 0.0;
};

inline constexpr std::string_view kCsvHeader = "n,m,eps,seed,algo,colors,max_diameter,dead_fraction,rounds,wall_ms";

inline void write_csv_row(std::ostream& os, const RunRecord& r) {
  os << r.n << ',' << r.m << ',' << r.eps << ',' << r.seed << ',' << r.algo << ',' << r.colors << ','
     << r.max_diameter << ',' << r.dead_fraction << ',' << r.rounds << ',' << r.wall_ms << '\n';
}

inline RunRecord run_decomposition(const Graph& g, std::uint64_t seed, Algorithm algo) {
  RunRecord rec;
  rec.n = g.num_nodes();
  rec.m = g.num_edges();
  rec.seed = seed;
  rec.algo = std::string(to_string(algo));
  auto start = std::chrono::steady_clock::now();
  DecompositionResult res = decompose(g, seed, make_carver(algo));
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rec.colors = res.decomposition.colors;
  rec.rounds = res.ledger.total();
  if (res.remaining.size() > 1 && rec.n > 0) {
    rec.dead_fraction = static_cast<double>(res.remaining[1]) / static_cast<double>(rec.n);
  }
  rec.max_diameter = max_cluster_diameter(g, res.decomposition.clusters,
                                          [](const ColoredCluster& c) -> const std::vector<NodeId>& { return c.nodes; });
  return rec;
}

struct BenchConfig {
  GraphKind family = GraphKind::Gnp;
  std::vector<std::size_t> sizes;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  Algorithm algo = Algorithm::Refined;
  double avg_degree = 8.0;  // gnp uses p = avg_degree / n
  std::size_t degree = 4;   // regular family
};

inline Graph bench_graph(const BenchConfig& cfg, std::size_t n, std::uint64_t seed) {
  GenParams p;
  p.n = n;
  p.degree = cfg.degree;
  switch (cfg.family) {
    case GraphKind::Gnp:
      p.p = std::min(1.0, cfg.avg_degree / static_cast<double>(std::max<std::size_t>(n, 1)));
      break;
    case GraphKind::Grid: {
      auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
      p.rows = side;
      p.cols = side == 0 ? 0 : (n + side - 1) / side;
      break;
    }
    default:
      break;
  }
  return generate(cfg.family, p, seed);
}

/// One record per (size, trial), ordered by size then trial.
inline std::vector<RunRecord> run_bench(const BenchConfig& cfg) {
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t n : cfg.sizes)
    for (std::size_t t = 0; t < cfg.trials; ++t) jobs.emplace_back(n, t);
  std::vector<RunRecord> rows(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    auto [n, trial] = jobs[i];
    std::uint64_t graph_seed = derive_seed(cfg.seed, {n, trial, 0});
    std::uint64_t algo_seed = derive_seed(cfg.seed, {n, trial, 1});
    Graph g = bench_graph(cfg, n, graph_seed);
    rows[i] = run_decomposition(g, algo_seed, cfg.algo);
  });
  return rows;
}

}  // namespace netdecomp
