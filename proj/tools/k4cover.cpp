#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "k4cover/generators.hpp"
#include "k4cover/io.hpp"
#include "k4cover/oracle.hpp"
#include "k4cover/solver.hpp"

using namespace k4cover;
using nlohmann::json;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct SolveFlags {
  std::string strategy = "branch";
  int threshold = 64;
  int c1 = 10;
  int threads = 1;
  bool no_packing_bound = false;
  std::string stats_out;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--protrusion-strategy", strategy, "branch or replace")
        ->check(CLI::IsMember({"branch", "replace"}));
    app->add_option("--protrusion-threshold", threshold, "minimum protrusion size (at least 5)");
    app->add_option("--c1", c1, "constant in the search measure");
    app->add_option("--threads", threads, "compression workers")->check(CLI::PositiveNumber);
    app->add_flag("--no-packing-bound", no_packing_bound, "do not prune with the K4 packing lower bound");
    app->add_option("--stats-out", stats_out, "write search statistics as JSON");
    app->add_option("--seed", seed, "first generator seed for bench; solve and trace only echo it");
  }

  SolverConfig config() const {
    SolverConfig c;
    c.c1 = c1;
    c.threads = threads;
    c.packing_bound = !no_packing_bound;
    c.protrusion.threshold = threshold;
    c.protrusion.strategy = *parse_strategy(strategy);
    c.protrusion.validate();
    return c;
  }
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("k4cover");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("K4COVER_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

std::vector<long> labels_of(const io::GraphFile& file, const VertexSet& w) {
  std::vector<long> out;
  for (VertexId v : w) out.push_back(file.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct Outcome {
  std::optional<VertexSet> cover;
  int k = 0;
  SearchStats stats;
};

Outcome run_solver(const MultiGraph& g, std::optional<int> k, const SolverConfig& cfg) {
  Outcome out;
  if (k) {
    out.k = *k;
    out.cover = iterative_compress(g, *k, cfg, &out.stats);
  } else {
    auto [best, w] = minimum_cover(g, cfg, &out.stats);
    out.k = best;
    out.cover = std::move(w);
  }
  return out;
}

json report(const io::GraphFile& file, const Outcome& o, const SolveFlags& flags, const SolverConfig& cfg) {
  json j;
  j["status"] = o.cover ? "YES" : "NO";
  j["k"] = o.k;
  j["n"] = file.graph.num_vertices();
  j["m"] = file.graph.num_edges();
  j["cover"] = o.cover ? labels_of(file, *o.cover) : std::vector<long>{};
  if (o.cover)
    j["valid"] = is_k4_minor_free(delete_vertices(file.graph, *o.cover)) &&
                 static_cast<int>(o.cover->size()) <= o.k;
  else
    j["valid"] = nullptr;
  j["stats"] = io::to_json(o.stats);
  json c = io::to_json(cfg);
  c["seed"] = flags.seed;
  j["config"] = c;
  return j;
}

int cmd_solve(const std::string& path, std::optional<int> k, const SolveFlags& flags) {
  const io::GraphFile file = io::read_file(path);
  const SolverConfig cfg = flags.config();
  if (k && *k < 0) throw std::invalid_argument("k must be nonnegative");
  spdlog::info("solving {} vertices, {} edges", file.graph.num_vertices(), file.graph.num_edges());
  Outcome o = run_solver(file.graph, k, cfg);
  spdlog::info("{} nodes, {} leaves, {:.3f}s", o.stats.nodes, o.stats.leaves, o.stats.seconds);
  const json r = report(file, o, flags, cfg);
  if (o.cover && !r["valid"].get<bool>()) throw std::logic_error("solver returned an invalid cover");
  std::cout << r.dump(2) << '\n';
  if (!flags.stats_out.empty()) write_text(flags.stats_out, io::to_json(o.stats).dump(2) + "\n");
  return o.cover ? kYes : kNo;
}

int cmd_verify(const std::string& path, const std::string& cover_path) {
  const io::GraphFile file = io::read_file(path);
  VertexSet w;
  for (long id : io::read_cover(cover_path)) w.insert(file.internal(id));
  const bool ok = is_k4_minor_free(delete_vertices(file.graph, w));
  std::cout << json{{"valid", ok}, {"size", w.size()}}.dump() << '\n';
  return ok ? kYes : kNo;
}

int cmd_oracle(const std::string& path, std::optional<int> k, int max_vertices) {
  const io::GraphFile file = io::read_file(path);
  oracle::OracleLimit limit;
  limit.max_vertices = max_vertices;
  auto [best, w] = oracle::min_cover(file.graph, limit);
  const bool yes = !k || best <= *k;
  json j;
  j["status"] = yes ? "YES" : "NO";
  j["optimum"] = best;
  j["cover"] = labels_of(file, w);
  if (k) j["k"] = *k;
  std::cout << j.dump(2) << '\n';
  return yes ? kYes : kNo;
}

int cmd_gen(const std::string& kind, int n, int k, int m, bool simple, std::uint64_t seed, const std::string& format) {
  gen::Rng rng(seed);
  io::GraphFile file;
  file.format = format == "dimacs" ? io::Format::Dimacs : io::Format::EdgeList;
  std::string header;
  if (kind == "sp") {
    file.graph = gen::random_sp(n, rng);
  } else if (kind == "planted") {
    gen::Planted p = gen::planted(n, k, rng);
    file.graph = std::move(p.graph);
    std::ostringstream line;
    line << "# spoilers";
    const long base = file.format == io::Format::Dimacs ? 1 : 0;
    for (VertexId v : p.spoilers) line << ' ' << v + base;
    header = line.str() + "\n";
  } else if (kind == "random") {
    file.graph = gen::random_multigraph(n, m < 0 ? 2 * n : m, rng, !simple);
  } else {
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
  }
  const long base = file.format == io::Format::Dimacs ? 1 : 0;
  for (VertexId v : file.graph.vertices()) file.labels.push_back(v + base);
  std::cout << header << io::serialize(file);
  return 0;
}

int cmd_bench(int n, const std::vector<int>& ks, int seeds, const SolveFlags& flags) {
  SolverConfig cfg = flags.config();
  cfg.record_mu = false;
  json rows = json::array();
  for (int k : ks) {
    for (int s = 0; s < seeds; ++s) {
      gen::Rng rng(flags.seed + static_cast<std::uint64_t>(s));
      gen::Planted p = gen::planted(n, k, rng);
      SearchStats stats;
      const auto t0 = std::chrono::steady_clock::now();
      auto w = iterative_compress(p.graph, k, cfg, &stats);
      const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const bool valid = w && static_cast<int>(w->size()) <= k && is_k4_minor_free(delete_vertices(p.graph, *w));
      json row = {{"n", n},        {"k", k},         {"seed", flags.seed + s}, {"status", w ? "YES" : "NO"},
                  {"valid", valid}, {"seconds", sec}, {"leaves", stats.leaves}, {"nodes", stats.nodes}};
      spdlog::info("{}", row.dump());
      rows.push_back(row);
    }
  }
  std::cout << rows.dump(2) << '\n';
  return 0;
}

int cmd_trace(const std::string& path, std::optional<int> k, const std::string& out_dir, const SolveFlags& flags) {
  const io::GraphFile file = io::read_file(path);
  const SolverConfig cfg = flags.config();
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  Outcome o = run_solver(file.graph, k, cfg);

  // Decomposition of the input when it is already minor-free, otherwise of
  // what is left after deleting the cover.
  std::optional<MultiGraph> tw2;
  if (is_k4_minor_free(file.graph)) tw2 = file.graph;
  else if (o.cover) tw2 = delete_vertices(file.graph, *o.cover);
  if (tw2) write_text((dir / "decomposition.dot").string(), build_extended_decomposition(*tw2).to_dot());
  write_text((dir / "mu.csv").string(), io::mu_csv(o.stats));
  write_text((dir / "rules.csv").string(), io::rule_table(o.stats));
  write_text((dir / "report.json").string(), report(file, o, flags, cfg).dump(2) + "\n");
  if (!flags.stats_out.empty()) write_text(flags.stats_out, io::to_json(o.stats).dump(2) + "\n");
  std::cout << json{{"status", o.cover ? "YES" : "NO"}, {"out", out_dir}, {"mu_rows", o.stats.mu_rows.size()}}.dump()
            << '\n';
  return o.cover ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Exact solver for K4-minor cover (treewidth-two vertex deletion)"};
  app.require_subcommand(1);

  std::string file, cover_file, kind = "sp", format = "edge-list", out_dir;
  std::optional<int> k;
  int n = 50, gen_k = 0, m = -1, max_vertices = 10, seeds = 20;
  bool simple = false;
  std::vector<int> ks{2, 4, 6};
  std::uint64_t gen_seed = 1;
  SolveFlags flags;

  auto* solve = app.add_subcommand("solve", "decide whether a cover of size k exists (minimum when k is omitted)");
  solve->add_option("file", file, "graph file (edge list or DIMACS)")->required();
  solve->add_option("-k,--k", k, "cover size");
  flags.add_to(solve);

  auto* verify = app.add_subcommand("verify", "check that deleting a cover leaves no K4 minor");
  verify->add_option("file", file)->required();
  verify->add_option("cover", cover_file, "ids, or a solve report")->required();

  auto* orc = app.add_subcommand("oracle", "brute-force optimum for small graphs");
  orc->add_option("file", file)->required();
  orc->add_option("-k,--k", k, "report YES/NO for this k");
  orc->add_option("--max-vertices", max_vertices, "refuse larger graphs");

  auto* gen = app.add_subcommand("gen", "generate a graph");
  gen->add_option("kind", kind, "sp, planted or random")->check(CLI::IsMember({"sp", "planted", "random"}));
  gen->add_option("-n,--n", n, "vertices")->check(CLI::NonNegativeNumber);
  gen->add_option("-k,--k", gen_k, "planted spoilers")->check(CLI::NonNegativeNumber);
  gen->add_option("-m,--m", m, "edges for random graphs (default 2n)");
  gen->add_flag("--simple", simple, "no parallel edges in random graphs");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--format", format)->check(CLI::IsMember({"edge-list", "dimacs"}));

  auto* bench = app.add_subcommand("bench", "time the solver on planted instances");
  bench->add_option("-n,--n", n);
  bench->add_option("-k,--k", ks, "spoiler counts")->delimiter(',');
  bench->add_option("--seeds", seeds);
  flags.add_to(bench);

  auto* trace = app.add_subcommand("trace", "write decomposition DOT, mu CSV and rule counts");
  trace->add_option("file", file)->required();
  trace->add_option("-k,--k", k, "cover size (minimum when omitted)");
  trace->add_option("--out", out_dir, "output directory")->required();
  flags.add_to(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*solve) return cmd_solve(file, k, flags);
    if (*verify) return cmd_verify(file, cover_file);
    if (*orc) return cmd_oracle(file, k, max_vertices);
    if (*gen) return cmd_gen(kind, n, gen_k, m, simple, gen_seed, format);
    if (*bench) return cmd_bench(n, ks, seeds, flags);
    if (*trace) return cmd_trace(file, k, out_dir, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
