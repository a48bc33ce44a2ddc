// netdecomp: generate graphs, carve and decompose them, verify the results
// and sweep sizes for scaling tables.
//
// Exit codes: 0 success, 1 I/O failure, 2 bad flags, 3 violations found.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netdecomp/json_io.hpp"
#include "netdecomp/netdecomp.hpp"
#include "netdecomp/pipeline.hpp"

namespace nd = netdecomp;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolations = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nd::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file " + path);
  try {
    return nd::read_graph(in);
  } catch (const std::runtime_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

nd::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nd::json::parse(in);
  } catch (const nd::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

/// Writes to `path`, or stdout when the path is empty or "-".
void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

nd::Algorithm algorithm_from(const std::string& s) {
  auto a = nd::parse_algorithm(s);
  if (!a) throw UsageError("unknown algorithm '" + s + "' (trivial, strong, refined)");
  return *a;
}

int report(const std::vector<nd::Violation>& violations) {
  std::cerr << nd::to_json(violations).dump(2) << '\n';
  std::cerr << violations.size() << " violation(s)\n";
  return kExitViolations;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string type = "path";
  std::size_t n = 0;
  double p = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t degree = 4;
  std::size_t sub = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenOptions& o) {
  auto kind = nd::parse_graph_kind(o.type);
  if (!kind) throw UsageError("unknown graph type '" + o.type + "'");
  nd::GenParams params;
  params.n = o.n;
  params.p = o.p;
  params.rows = o.rows;
  params.cols = o.cols;
  params.degree = o.degree;
  params.base_nodes = o.n;
  params.subdivision = o.sub;
  nd::Graph g;
  try {
    g = nd::generate(*kind, params, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_text(o.out, nd::to_text(g));
  return 0;
}

struct RunOptions {
  std::string in;
  std::string out;
  std::string algo = "refined";
  double eps = 0.5;
  std::uint64_t seed = 1;
  bool no_verify = false;
};

int run_carve(const RunOptions& o) {
  const nd::Algorithm algo = algorithm_from(o.algo);
  if (!(o.eps > 0.0 && o.eps < 1.0)) throw UsageError("--eps must lie in (0, 1)");
  nd::Graph g = load_graph(o.in);
  const nd::NodeMask all = nd::NodeMask::all(g.num_nodes());
  nd::StrongCarving c = g.num_nodes() == 0 ? nd::StrongCarving{} : nd::make_carver(algo)(g, all, o.eps, o.seed);
  if (!o.no_verify) {
    auto v = nd::verify_strong_carving(g, all, c, o.eps, c.diameter_bound);
    if (!v.empty()) return report(v);
  }
  nd::json j = nd::to_json(c);
  j["eps"] = o.eps;
  write_text(o.out, j.dump() + "\n");
  return 0;
}

int run_decompose(const RunOptions& o) {
  const nd::Algorithm algo = algorithm_from(o.algo);
  nd::Graph g = load_graph(o.in);
  nd::DecompositionResult r = nd::decompose(g, o.seed, nd::make_carver(algo));
  if (!o.no_verify) {
    auto v = nd::verify_decomposition(g, r.decomposition, nd::color_bound(g.num_nodes()), r.diameter_bound);
    if (!v.empty()) return report(v);
  }
  const std::uint32_t max_diameter = nd::max_cluster_diameter(
      g, r.decomposition.clusters, [](const nd::ColoredCluster& c) -> const std::vector<nd::NodeId>& { return c.nodes; });
  write_text(o.out, nd::to_json(r, max_diameter).dump() + "\n");
  return 0;
}

struct VerifyOptions {
  std::string mode = "decomposition";
  std::string in;
  std::string clustering;
  std::optional<std::uint64_t> c_bound;
  std::optional<std::uint64_t> d_bound;
  std::optional<double> eps;
};

int run_verify(const VerifyOptions& o) {
  if (o.mode != "decomposition" && o.mode != "carving") throw UsageError("--mode must be decomposition or carving");
  nd::Graph g = load_graph(o.in);
  nd::json j = load_json(o.clustering);
  std::vector<nd::Violation> v;
  try {
    std::optional<std::uint64_t> d_bound = o.d_bound;
    if (!d_bound && j.contains("stats") && j["stats"].contains("d_bound")) {
      d_bound = j["stats"]["d_bound"].get<std::uint64_t>();
    }
    if (!d_bound) throw UsageError("--d-bound is required when the clustering carries no d_bound");
    if (o.mode == "decomposition") {
      nd::NetworkDecomposition d = nd::decomposition_from_json(j);
      v = nd::verify_decomposition(g, d, o.c_bound.value_or(nd::color_bound(g.num_nodes())), *d_bound);
    } else {
      nd::StrongCarving c = nd::strong_carving_from_json(j);
      double eps = o.eps.value_or(j.value("eps", 0.5));
      v = nd::verify_strong_carving(g, nd::NodeMask::all(g.num_nodes()), c, eps, *d_bound);
    }
  } catch (const nd::json::exception& e) {
    throw IoError(o.clustering + ": malformed clustering: " + e.what());
  }
  std::cout << nd::to_json(v).dump(2) << '\n';
  return v.empty() ? 0 : kExitViolations;
}

struct BenchOptions {
  std::string family = "gnp";
  std::string sizes = "256,512,1024,2048";
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::string algo = "refined";
  std::string csv;
  double avg_degree = 8.0;
  std::size_t degree = 4;
  bool no_wall_time = false;
};

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad size '" + item + "' in --sizes");
    }
  }
  if (out.empty()) throw UsageError("--sizes is empty");
  return out;
}

int run_bench(const BenchOptions& o) {
  auto family = nd::parse_graph_kind(o.family);
  if (!family || *family == nd::GraphKind::Barrier) throw UsageError("unsupported bench family '" + o.family + "'");
  nd::BenchConfig cfg;
  cfg.family = *family;
  cfg.sizes = parse_sizes(o.sizes);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.algo = algorithm_from(o.algo);
  cfg.avg_degree = o.avg_degree;
  cfg.degree = o.degree;
  std::vector<nd::RunRecord> rows;
  try {
    rows = nd::run_bench(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream os;
  os << nd::kCsvHeader << '\n';
  for (auto& r : rows) {
    if (o.no_wall_time) r.wall_ms = 0.0;
    nd::write_csv_row(os, r);
  }
  write_text(o.csv, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network decomposition by strong-diameter ball carving"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (default: NETDECOMP_THREADS or all cores)")->check(CLI::NonNegativeNumber);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph file");
  gen_cmd->add_option("--type", gen.type, "path | grid | gnp | regular | barrier | complete | star")->required();
  gen_cmd->add_option("--n", gen.n, "Node count (barrier: base nodes; star: leaves)");
  gen_cmd->add_option("--p", gen.p, "Edge probability for gnp")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--rows", gen.rows, "Grid rows");
  gen_cmd->add_option("--cols", gen.cols, "Grid columns");
  gen_cmd->add_option("--degree", gen.degree, "Degree for regular and barrier bases");
  gen_cmd->add_option("--sub", gen.sub, "Barrier subdivision length")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  RunOptions carve;
  auto* carve_cmd = app.add_subcommand("carve", "Strong-diameter ball carving of a graph file");
  RunOptions decomp;
  auto* decomp_cmd = app.add_subcommand("decompose", "Network decomposition of a graph file");
  for (auto [cmd, opts] : {std::pair{carve_cmd, &carve}, std::pair{decomp_cmd, &decomp}}) {
    cmd->add_option("--in", opts->in, "Graph file")->required();
    cmd->add_option("--out", opts->out, "Output JSON (default stdout)");
    cmd->add_option("--algo,--eps-impl", opts->algo, "trivial | strong | refined");
    cmd->add_option("--seed", opts->seed, "RNG seed");
    cmd->add_flag("--no-verify", opts->no_verify, "Skip the verifier before writing");
  }
  carve_cmd->add_option("--eps", carve.eps, "Discard budget in (0, 1)");

  VerifyOptions ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check a clustering against its graph");
  verify_cmd->add_option("--mode", ver.mode, "decomposition | carving");
  verify_cmd->add_option("--in", ver.in, "Graph file")->required();
  verify_cmd->add_option("--clustering", ver.clustering, "Clustering JSON")->required();
  verify_cmd->add_option("--c-bound", ver.c_bound, "Color bound (default ceil(log2 n) + 1)");
  verify_cmd->add_option("--d-bound", ver.d_bound, "Diameter bound (default: the clustering's d_bound)");
  verify_cmd->add_option("--eps", ver.eps, "Discard budget for carving mode");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Scaling sweep, one CSV row per size and trial");
  bench_cmd->add_option("--family", bench.family, "path | grid | gnp | regular | complete | star");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated node counts");
  bench_cmd->add_option("--trials", bench.trials, "Trials per size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--algo,--eps-impl", bench.algo, "trivial | strong | refined");
  bench_cmd->add_option("--csv", bench.csv, "Output CSV (default stdout)");
  bench_cmd->add_option("--avg-degree", bench.avg_degree, "gnp uses p = avg-degree / n");
  bench_cmd->add_option("--degree", bench.degree, "Degree for the regular family");
  bench_cmd->add_flag("--no-wall-time", bench.no_wall_time, "Write 0 for wall_ms so the CSV is byte-stable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (threads > 0) nd::set_max_threads(threads);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*carve_cmd) return run_carve(carve);
    if (*decomp_cmd) return run_decompose(decomp);
    if (*verify_cmd) return run_verify(ver);
    if (*bench_cmd) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
