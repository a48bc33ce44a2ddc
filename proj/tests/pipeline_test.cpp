#include <gtest/gtest.h>

#include <sstream>

#include "netdecomp/netdecomp.hpp"
#include "netdecomp/pipeline.hpp"

using namespace netdecomp;

TEST(Pipeline, ParseAlgorithm) {
  EXPECT_EQ(parse_algorithm("trivial"), Algorithm::Trivial);
  EXPECT_EQ(parse_algorithm("strong"), Algorithm::Strong);
  EXPECT_EQ(parse_algorithm("refined"), Algorithm::Refined);
  EXPECT_FALSE(parse_algorithm("Refined").has_value());
  for (Algorithm a : {Algorithm::Trivial, Algorithm::Strong, Algorithm::Refined}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
}

TEST(Pipeline, ParseGraphKind) {
  EXPECT_EQ(parse_graph_kind("regular"), GraphKind::RegularExpander);
  EXPECT_EQ(parse_graph_kind("barrier"), GraphKind::Barrier);
  EXPECT_FALSE(parse_graph_kind("tree").has_value());
}

TEST(Pipeline, CsvRow) {
  RunRecord r;
  r.n = 10;
  r.m = 9;
  r.eps = 0.5;
  r.seed = 4;
  r.algo = "strong";
  r.colors = 2;
  r.max_diameter = 3;
  r.dead_fraction = 0.25;
  r.rounds = 77;
  r.wall_ms = 0;
  std::ostringstream os;
  write_csv_row(os, r);
  EXPECT_EQ(os.str(), "10,9,0.5,4,strong,2,3,0.25,77,0\n");
  EXPECT_EQ(std::count(kCsvHeader.begin(), kCsvHeader.end(), ','), 9);
}

TEST(Pipeline, RunDecompositionFillsRecord) {
  Graph g = make_grid(10, 10);
  auto r = run_decomposition(g, 3, Algorithm::Refined);
  EXPECT_EQ(r.n, 100u);
  EXPECT_EQ(r.m, 180u);
  EXPECT_GE(r.colors, 1u);
  EXPECT_LE(r.colors, color_bound(100));
  EXPECT_GT(r.rounds, 0u);
  EXPECT_GE(r.dead_fraction, 0.0);
  EXPECT_LE(r.dead_fraction, 0.5);
}

TEST(Pipeline, BenchOrderedAndDeterministic) {
  BenchConfig cfg;
  cfg.family = GraphKind::Gnp;
  cfg.sizes = {64, 32, 128};
  cfg.trials = 2;
  cfg.seed = 11;
  cfg.algo = Algorithm::Strong;
  auto a = run_bench(cfg);
  auto b = run_bench(cfg);
  ASSERT_EQ(a.size(), 6u);
  std::ostringstream sa, sb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].n, cfg.sizes[i / 2]);
    a[i].wall_ms = b[i].wall_ms = 0;
    write_csv_row(sa, a[i]);
    write_csv_row(sb, b[i]);
  }
  EXPECT_EQ(sa.str(), sb.str());
  // Distinct trials draw distinct graphs.
  EXPECT_NE(bench_graph(cfg, 64, derive_seed(11, {64, 0, 0})), bench_graph(cfg, 64, derive_seed(11, {64, 1, 0})));
}

TEST(Pipeline, BenchGridIsNearSquare) {
  BenchConfig cfg;
  cfg.family = GraphKind::Grid;
  Graph g = bench_graph(cfg, 100, 1);
  EXPECT_EQ(g.num_nodes(), 100u);
  EXPECT_EQ(g.num_edges(), 180u);
}
