#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "netdecomp/json_io.hpp"
#include "netdecomp/netdecomp.hpp"

using namespace netdecomp;

namespace {

RoundLedger ledger_with(std::uint64_t rounds) {
  RoundLedger l;
  l.charge("work", rounds);
  return l;
}

std::uint64_t sum_of(const RoundLedger& l) {
  std::uint64_t s = 0;
  for (const auto& e : l.breakdown()) s += e.rounds;
  return s;
}

}  // namespace

TEST(Ledger, BfsChargesDepth) {
  RoundLedger l;
  l.charge_bfs(0);
  EXPECT_EQ(l.total(), 0u);
  l.charge_bfs(7);
  EXPECT_EQ(l.total(), 7u);
  ASSERT_EQ(l.breakdown().size(), 2u);
  EXPECT_EQ(l.breakdown()[1].label, "bfs");
  EXPECT_EQ(l.breakdown()[1].rounds, 7u);
}

TEST(Ledger, SteinerAggregateChargesProduct) {
  RoundLedger l;
  l.charge_steiner_aggregate(5, 1);
  EXPECT_EQ(l.total(), 5u);
  l.charge_steiner_aggregate(0, 3);
  EXPECT_EQ(l.total(), 5u);
  EXPECT_EQ(l.breakdown().back().label, "steiner-aggregate");
  EXPECT_THROW(l.charge_steiner_aggregate(4, 0), std::invalid_argument);
}

TEST(Ledger, LeaderChargesThreeDiameters) {
  RoundLedger l;
  l.charge_leader(4);
  EXPECT_EQ(l.total(), 12u);
}

TEST(Ledger, MergeTakesMaximum) {
  std::vector<RoundLedger> ls{ledger_with(3), ledger_with(9), ledger_with(4)};
  RoundLedger m = merge_parallel(ls);
  EXPECT_EQ(m.total(), 9u);
  EXPECT_EQ(m.breakdown().front().rounds, 9u);
  EXPECT_EQ(m.breakdown().back().label, "parallel-over-3-components");
  EXPECT_EQ(m.breakdown().back().rounds, 0u);
}

TEST(Ledger, MergeOfOneIsIdentity) {
  std::vector<RoundLedger> ls{ledger_with(6)};
  EXPECT_EQ(merge_parallel(ls), ls[0]);
}

TEST(Ledger, MergeOfNothingFails) {
  std::vector<RoundLedger> none;
  EXPECT_THROW(merge_parallel(none), std::invalid_argument);
}

TEST(Ledger, CompositionIsAssociative) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RoundLedger> ls(3);
    for (auto& l : ls) {
      auto charges = uniform_below(rng, 5);
      for (std::uint64_t k = 0; k < charges; ++k) l.charge("c", uniform_below(rng, 100));
    }
    // Sequential: (a+b)+c == a+(b+c), total and breakdown.
    RoundLedger left = ls[0];
    left.append(ls[1]);
    left.append(ls[2]);
    RoundLedger bc = ls[1];
    bc.append(ls[2]);
    RoundLedger right = ls[0];
    right.append(bc);
    EXPECT_EQ(left, right);
    EXPECT_EQ(left.total(), sum_of(left));
    // Parallel: max(max(a,b),c) == max(a,max(b,c)) in total.
    std::vector<RoundLedger> ab{ls[0], ls[1]};
    std::vector<RoundLedger> l2{merge_parallel(ab), ls[2]};
    std::vector<RoundLedger> bc2{ls[1], ls[2]};
    std::vector<RoundLedger> r2{ls[0], merge_parallel(bc2)};
    EXPECT_EQ(merge_parallel(l2).total(), merge_parallel(r2).total());
    EXPECT_EQ(merge_parallel(ls).total(), std::max({ls[0].total(), ls[1].total(), ls[2].total()}));
  }
}

TEST(Ledger, JsonRoundTrip) {
  RoundLedger l;
  l.charge_bfs(3);
  l.charge_leader(2);
  RoundLedger back = ledger_from_json(to_json(l));
  EXPECT_EQ(back, l);
  json broken = to_json(l);
  broken["total"] = 1;
  EXPECT_THROW(ledger_from_json(broken), std::runtime_error);
}

TEST(Ledger, BallBfsEntryEqualsLoggedRadiusPlusOne) {
  // K_8 under the trivial box: one ball of radius r* = 1, charged r* + 1 = 2.
  Graph g = make_complete(8);
  StrongCarving c = carve_strong(g, NodeMask::all(8), 0.5, 1, weak_carver(WeakImpl::Trivial));
  ASSERT_EQ(c.balls.size(), 1u);
  std::vector<std::uint64_t> bfs;
  for (const auto& e : c.ledger.breakdown())
    if (e.label == "bfs") bfs.push_back(e.rounds);
  ASSERT_EQ(bfs.size(), 1u);
  EXPECT_EQ(bfs[0], c.balls[0].radius + 1);
}

TEST(Ledger, BallBfsEntriesMatchLogAcrossRuns) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Graph g = make_gnp(300, 0.02, seed);
    StrongCarving c = carve_strong(g, NodeMask::all(300), 0.5, seed, weak_carver(WeakImpl::Trivial));
    // The trivial box never charges "bfs", so every bfs entry comes from a ball,
    // unless it came from a merged component that was not the slowest.
    std::multiset<std::uint64_t> logged;
    for (const auto& b : c.balls) logged.insert(b.radius + 1);
    for (const auto& e : c.ledger.breakdown()) {
      if (e.label != "bfs") continue;
      EXPECT_TRUE(logged.count(e.rounds) > 0) << "unlogged bfs charge " << e.rounds;
    }
  }
}

TEST(Ledger, SteinerChargeMatchesWeakCarvingMetadata) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = make_gnp(200, 0.03, seed);
    NodeMask mask = fixtures::largest_component(g);
    WeakCarveResult w = weak_carve(g, mask, 0.25, seed, WeakImpl::LinialSaks);
    std::uint32_t depth = 0;
    for (const auto& c : w.carving.clusters) depth = std::max(depth, steiner_depth(c.tree));
    EXPECT_EQ(depth, w.carving.declared_depth);
    RoundLedger l;
    l.charge_steiner_aggregate(w.carving.declared_depth, w.carving.declared_congestion);
    EXPECT_EQ(l.total(), std::uint64_t{depth} * steiner_congestion(w.carving.clusters));
  }
}

TEST(Ledger, IterationChargeIsMaxOverComponentsByReplay) {
  // Carve each component of a disconnected graph separately and replay the
  // per-iteration maximum; the combined run must charge exactly that.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = make_gnp(400, 0.006, seed);
    const NodeMask all = NodeMask::all(g.num_nodes());
    WeakCarver box = weak_carver(WeakImpl::Trivial);
    StrongCarving whole = carve_strong(g, all, 0.5, seed, box);

    // Replay: the transformation on a component uses the component's own
    // node count only through the seed path and the global parameters, so we
    // recompute the expected ledger by running the iteration loop manually.
    const auto params = CarvingParams::from(all.count(), 0.5);
    std::vector<std::vector<NodeId>> active = connected_components(g, all);
    double bound = static_cast<double>(all.count());
    std::uint64_t expect = 0;
    for (std::uint32_t i = 1; i <= params.iterations; ++i) {
      const double threshold = bound / 2.0;
      std::uint64_t worst = 0;
      bool any = false;
      std::vector<std::vector<NodeId>> next;
      for (const auto& comp : active) {
        if (static_cast<double>(comp.size()) <= threshold) {
          next.push_back(comp);
          continue;
        }
        any = true;
        const NodeMask cm = NodeMask::from_nodes(g.num_nodes(), comp);
        WeakCarveResult w = box(g, cm, params.eps_inner, derive_seed(seed, {i, comp.front()}));
        std::uint64_t cost = w.ledger.total() + std::uint64_t{w.carving.declared_depth} * w.carving.declared_congestion;
        std::vector<char> gone(g.num_nodes(), 0);
        auto giant = detect_giant(w.carving, std::max(1.0, threshold));
        if (giant) {
          const auto& cl = w.carving.clusters[*giant];
          GrownBall b = grow_ball(g, cm, cl.tree.root, steiner_depth(cl.tree), params.growth_cap, 0.5);
          cost += b.radius + 1;
          for (NodeId v : b.ball) gone[v] = 1;
          for (NodeId v : b.boundary) gone[v] = 1;
        } else {
          for (NodeId v : w.carving.dead) gone[v] = 1;
        }
        worst = std::max(worst, cost);
        std::vector<NodeId> rest;
        for (NodeId v : comp)
          if (!gone[v]) rest.push_back(v);
        if (!rest.empty())
          for (auto& piece : connected_components(g, NodeMask::from_nodes(g.num_nodes(), rest))) next.push_back(piece);
      }
      if (any) expect += worst;
      active = std::move(next);
      bound = threshold;
    }
    EXPECT_EQ(whole.ledger.total(), expect) << "seed " << seed;
  }
}

TEST(Ledger, TotalsAreDeterministic) {
  Graph g = make_gnp(500, 0.01, 3);
  auto carver = strong_carver(WeakImpl::LinialSaks);
  auto a = carver(g, NodeMask::all(500), 0.5, 17);
  auto b = carver(g, NodeMask::all(500), 0.5, 17);
  EXPECT_EQ(a.ledger, b.ledger);
}
