#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "netdecomp/json_io.hpp"
#include "netdecomp/netdecomp.hpp"
#include "oracles.hpp"

using namespace netdecomp;

namespace {

WeakCarving weak_with_sizes(const std::vector<std::size_t>& sizes) {
  WeakCarving w;
  NodeId next = 0;
  for (std::size_t s : sizes) {
    WeakCluster c;
    for (std::size_t k = 0; k < s; ++k) c.nodes.push_back(next++);
    w.clusters.push_back(c);
  }
  return w;
}

void expect_budget_split(const StrongCarving& c, std::size_t n, double eps, const std::string& what) {
  EXPECT_LE(static_cast<double>(c.dead_count(DeadCause::BlackBox)), eps / 2 * static_cast<double>(n)) << what;
  EXPECT_LE(static_cast<double>(c.dead_count(DeadCause::Boundary)), eps / 2 * static_cast<double>(n)) << what;
}

void expect_shrinkage(const StrongCarving& c, std::size_t n, const std::string& what) {
  for (const auto& t : c.trace) {
    EXPECT_LE(static_cast<double>(t.component_size), static_cast<double>(n) / std::pow(2.0, t.iteration - 1))
        << what << " iteration " << t.iteration;
  }
}

}  // namespace

TEST(CarvingParams, DerivedConstants) {
  auto p = CarvingParams::from(1024, 0.5);
  EXPECT_EQ(p.iterations, 10u);
  EXPECT_DOUBLE_EQ(p.eps_inner, 0.025);
  // ln 1024 / -ln 0.75 = 24.09..., so K = 25 + 1.
  EXPECT_EQ(p.growth_cap, 26u);
  EXPECT_DOUBLE_EQ(p.ratio_threshold, 4.0 / 3.0);
  EXPECT_LE(p.eps_inner * p.iterations, p.eps / 2 + 1e-15);
  EXPECT_EQ(CarvingParams::from(1, 0.5).iterations, 1u);
  EXPECT_THROW(CarvingParams::from(10, 1.5), std::invalid_argument);
}

TEST(StrongCarving, SingleNode) {
  Graph g = make_path(1);
  auto c = carve_strong(g, NodeMask::all(1), 0.5, 1, weak_carver(WeakImpl::LinialSaks));
  ASSERT_EQ(c.clusters.size(), 1u);
  EXPECT_EQ(c.clusters[0].nodes, std::vector<NodeId>{0});
  EXPECT_TRUE(c.dead.empty());
  EXPECT_TRUE(c.balls.empty());
}

TEST(StrongCarving, CompleteGraphIsOneBall) {
  Graph g = make_complete(8);
  auto c = carve_strong(g, NodeMask::all(8), 0.5, 1, weak_carver(WeakImpl::Trivial));
  ASSERT_EQ(c.clusters.size(), 1u);
  EXPECT_EQ(c.clusters[0].nodes.size(), 8u);
  EXPECT_TRUE(c.dead.empty());
  ASSERT_EQ(c.balls.size(), 1u);
  EXPECT_EQ(c.balls[0].iteration, 1u);
  EXPECT_EQ(c.balls[0].r_start, 1u);
  EXPECT_EQ(c.balls[0].radius, 1u);
}

TEST(StrongCarving, PathWithLinialSaks) {
  Graph g = make_path(64);
  const NodeMask all = NodeMask::all(64);
  auto c = carve_strong(g, all, 0.5, 7, weak_carver(WeakImpl::LinialSaks));
  EXPECT_LE(c.dead.size(), 32u);
  EXPECT_EQ(c.diameter_bound, 2ULL * c.black_box_depth + 2ULL * c.growth_cap);
  auto v = verify_strong_carving(g, all, c, 0.5, c.diameter_bound);
  EXPECT_TRUE(v.empty()) << to_string(v.front().kind);
  for (const auto& cl : c.clusters) EXPECT_LE(oracle::induced_diameter(g, cl.nodes), static_cast<int>(c.diameter_bound));
}

TEST(StrongCarving, EpsilonOutOfRange) {
  Graph g = make_path(4);
  EXPECT_THROW(carve_strong(g, NodeMask::all(4), 0.0, 1, weak_carver(WeakImpl::Trivial)), std::invalid_argument);
}

TEST(StrongCarving, BlackBoxErrorsPropagate) {
  Graph g = make_path(8);
  WeakCarver broken = [](const Graph&, const NodeMask&, double, std::uint64_t) -> WeakCarveResult {
    throw std::runtime_error("box failed");
  };
  EXPECT_THROW(carve_strong(g, NodeMask::all(8), 0.5, 1, broken), std::runtime_error);
}

TEST(StrongCarving, EmptyBlackBoxKillsComponentAndVerifierFlagsIt) {
  Graph g = make_path(8);
  WeakCarver empty = [](const Graph&, const NodeMask& mask, double, std::uint64_t) {
    WeakCarveResult r;
    r.carving.dead.assign(mask.nodes().begin(), mask.nodes().end());
    return r;
  };
  auto c = carve_strong(g, NodeMask::all(8), 0.5, 1, empty);
  EXPECT_EQ(c.dead.size(), 8u);
  auto kinds = oracle::kinds_of(verify_strong_carving(g, NodeMask::all(8), c, 0.5, 100));
  EXPECT_TRUE(kinds.count("dead-budget-exceeded"));
}

TEST(GrowBall, StarSaturates) {
  Graph g = make_star(6);
  for (double eps : {0.1, 0.5, 0.9}) {
    auto b = grow_ball(g, NodeMask::all(7), 0, 1, 3, eps);
    EXPECT_EQ(b.radius, 1u);
    EXPECT_TRUE(b.boundary.empty());
    EXPECT_EQ(b.ball.size(), 7u);
  }
}

TEST(GrowBall, PathFromEndpoint) {
  Graph g = make_path(100);
  auto b = grow_ball(g, NodeMask::all(100), 0, 5, 10, 0.5);
  EXPECT_EQ(b.radius, 5u);
  EXPECT_EQ(b.ball.size(), 6u);
  EXPECT_EQ(b.boundary, std::vector<NodeId>{6});
}

TEST(GrowBall, DeadCenterRejected) {
  Graph g = make_path(4);
  std::vector<NodeId> keep{1, 2, 3};
  EXPECT_THROW(grow_ball(g, NodeMask::from_nodes(4, keep), 0, 0, 2, 0.5), std::invalid_argument);
}

TEST(GrowBall, MatchesScanOracleOnRandomGrids) {
  Rng rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t rows = 2 + uniform_below(rng, 9);
    std::size_t cols = 2 + uniform_below(rng, 9);
    Graph g = make_grid(rows, cols);
    NodeMask mask = fixtures::random_mask(g.num_nodes(), 0.75, rng());
    if (mask.empty()) continue;
    NodeId center = mask.nodes()[uniform_below(rng, mask.count())];
    auto r_start = static_cast<std::uint32_t>(uniform_below(rng, 5));
    const double eps = 0.05 + 0.9 * uniform01(rng);
    const auto cap = CarvingParams::from(mask.count(), eps).growth_cap;
    auto alive = oracle::alive_vector(mask);
    auto d = oracle::floyd_warshall(g, alive);
    auto sizes = oracle::ball_sizes(d, alive, center, r_start + cap + 1);
    std::uint32_t expect = oracle::scan_grow_radius(sizes, r_start, cap, eps);
    ASSERT_NE(expect, kUnreached);
    auto b = grow_ball(g, mask, center, r_start, cap, eps);
    EXPECT_EQ(b.radius, expect) << "trial " << trial;
    EXPECT_EQ(b.ball.size(), sizes[expect]);
    EXPECT_EQ(b.boundary.size(), sizes[expect + 1] - sizes[expect]);
    for (NodeId v : b.ball) EXPECT_LE(d[center][v], static_cast<int>(expect));
    for (NodeId v : b.boundary) EXPECT_EQ(d[center][v], static_cast<int>(expect) + 1);
  }
}

TEST(DetectGiant, Examples) {
  EXPECT_FALSE(detect_giant(weak_with_sizes({3, 3, 2}), 4).has_value());
  EXPECT_EQ(detect_giant(weak_with_sizes({9, 2}), 8), std::optional<std::size_t>(0));
  EXPECT_THROW(detect_giant(weak_with_sizes({5, 5}), 4), InvariantViolation);
  EXPECT_THROW(detect_giant(weak_with_sizes({5}), 0.5), std::invalid_argument);

  Graph g = make_grid(5, 5);
  auto w = weak_carve(g, NodeMask::all(25), 0.5, 1, WeakImpl::Trivial);
  EXPECT_EQ(detect_giant(w.carving, 12.5), std::optional<std::size_t>(0));
}

TEST(StrongCarving, InvariantsOnFuzzGraphs) {
  for (std::size_t i = 0; i < 48; ++i) {
    auto fg = fixtures::fuzz_graph(i, 101, 4, 2000);
    const std::size_t n = fg.graph.num_nodes();
    NodeMask mask = i % 2 == 0 ? NodeMask::all(n) : fixtures::random_mask(n, 0.8, i);
    if (mask.empty()) continue;
    for (WeakImpl impl : {WeakImpl::Trivial, WeakImpl::LinialSaks}) {
      for (double eps : {0.2, 0.5}) {
        auto c = carve_strong(fg.graph, mask, eps, i, weak_carver(impl));
        const std::string what = fg.name + (impl == WeakImpl::Trivial ? " trivial" : " ls");
        auto v = verify_strong_carving(fg.graph, mask, c, eps, c.diameter_bound);
        EXPECT_TRUE(v.empty()) << what << ": " << to_string(v.front().kind) << " " << v.front().detail;
        expect_budget_split(c, mask.count(), eps, what);
        expect_shrinkage(c, mask.count(), what);
        EXPECT_EQ(c.dead_count(DeadCause::Separator) + c.dead_count(DeadCause::Halo), 0u);
      }
    }
  }
}

TEST(StrongCarving, DeterministicOutputAndLedger) {
  Graph g = make_gnp(800, 0.006, 4);
  auto carver = strong_carver(WeakImpl::LinialSaks);
  auto a = carver(g, NodeMask::all(800), 0.5, 99);
  auto b = carver(g, NodeMask::all(800), 0.5, 99);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(a.ledger, b.ledger);
}

TEST(StrongCarving, JsonRoundTrip) {
  Graph g = make_grid(10, 10);
  auto c = carve_strong(g, NodeMask::all(100), 0.5, 3, weak_carver(WeakImpl::LinialSaks));
  auto back = strong_carving_from_json(json::parse(to_json(c).dump()));
  EXPECT_EQ(back.clusters, c.clusters);
  EXPECT_EQ(back.dead, c.dead);
  EXPECT_EQ(back.ledger, c.ledger);
  EXPECT_EQ(back.diameter_bound, c.diameter_bound);
}
