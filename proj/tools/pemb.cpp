#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pemb/bench.hpp"
#include "pemb/construction.hpp"
#include "pemb/decode.hpp"
#include "pemb/embedding.hpp"
#include "pemb/parallel.hpp"
#include "pemb/queries.hpp"
#include "pemb/spanning_tree.hpp"

namespace {

using namespace pemb;

int default_threads() {
  if (const char* env = std::getenv("PEMB_THREADS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      return -1;
    }
  }
  return hardware_threads();
}

void check_threads(int threads) {
  if (threads < 1) throw CLI::ValidationError("--threads", "thread count must be >= 1");
}

std::vector<int> parse_thread_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    int value = 0;
    try {
      std::size_t used = 0;
      value = std::stoi(item, &used);
      if (used != item.size()) value = 0;
    } catch (const std::exception&) {
      value = 0;
    }
    if (value < 1) throw CLI::ValidationError("--threads", "bad thread count '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw CLI::ValidationError("--threads", "empty thread list");
  return out;
}

void print_list(const std::vector<VertexId>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? " " : "") << values[i];
  std::cout << '\n';
}

void report_violations(const std::vector<Violation>& violations) {
  for (const auto& v : violations) std::cerr << to_string(v.kind) << ": " << v.detail << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact planar embeddings: build, query, benchmark"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "Write a triangulated grid as .pg");
  std::size_t side = 0;
  std::uint64_t seed = 1;
  std::string gen_out;
  generate->add_option("--side", side, "Grid side length (>= 2)")->required();
  generate->add_option("--seed", seed, "Seed for the diagonals");
  generate->add_option("--out", gen_out, "Output .pg file")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a .pg embedding");
  std::string val_in;
  validate_cmd->add_option("--in", val_in)->required();

  auto* build = app.add_subcommand("build", "Encode a .pg embedding into PEMB1");
  std::string build_in, build_out, tree_in;
  int build_threads = default_threads();
  bool seq = false, deterministic = false;
  build->add_option("--in", build_in)->required();
  build->add_option("--out", build_out)->required();
  build->add_option("--threads", build_threads, "Worker threads (default PEMB_THREADS or all cores)");
  build->add_flag("--seq", seq, "Sequential reference construction");
  build->add_flag("--deterministic", deterministic, "Spanning tree equal to the serial DFS");
  build->add_option("--tree", tree_in, "Use this spanning tree instead of computing one");

  auto* query = app.add_subcommand("query", "Run one query on a PEMB1 file");
  std::string query_in, op;
  std::size_t arg = 0;
  query->add_option("--in", query_in)->required();
  query->add_option("--op", op)->required()->check(CLI::IsMember({"counting", "listing", "face"}));
  query->add_option("--arg", arg, "Vertex for counting/listing, tick for face")->required();

  auto* decode_cmd = app.add_subcommand("decode", "Rebuild the .pg rotation system from PEMB1");
  std::string dec_in, dec_out, dec_tree;
  decode_cmd->add_option("--in", dec_in)->required();
  decode_cmd->add_option("--out", dec_out)->required();
  decode_cmd->add_option("--tree-out", dec_tree, "Also write the encoded spanning tree");

  auto* bench = app.add_subcommand("bench", "Time construction phases, write CSV");
  std::string bench_in, bench_csv, query_csv, dataset, thread_list = "1,2,4,8";
  int reps = 5;
  bool bench_deterministic = false;
  bench->add_option("--in", bench_in)->required();
  bench->add_option("--csv", bench_csv)->required();
  bench->add_option("--threads", thread_list, "Comma-separated thread counts");
  bench->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench->add_option("--dataset", dataset, "Name for the dataset column (default: file stem)");
  bench->add_option("--query-csv", query_csv, "Also time queries against the adjacency list");
  bench->add_flag("--deterministic", bench_deterministic);

  try {
    app.parse(argc, argv);
    if (*build) check_threads(build_threads);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*generate) {
      if (side < 2) throw std::invalid_argument("--side must be >= 2");
      write_embedding_file(generate_grid_triangulation(side, seed), gen_out);
    } else if (*validate_cmd) {
      const auto g = read_embedding_file(val_in);
      const auto violations = validate(g);
      if (!violations.empty()) {
        report_violations(violations);
        return 1;
      }
      std::cout << "ok n=" << g.n << " m=" << g.m << " faces=" << count_faces(g) << '\n';
    } else if (*build) {
      const auto g = read_embedding_file(build_in);
      if (const auto violations = validate(g); !violations.empty()) {
        report_violations(violations);
        return 1;
      }
      const auto start = std::chrono::steady_clock::now();
      ParentEdges parents;
      if (!tree_in.empty()) {
        parents = read_tree_file(tree_in, g);
      } else if (seq) {
        parents = sequential_dfs_parents(g, 1);
      } else {
        parents = parallel_spanning_tree(g, 1, build_threads, deterministic);
      }
      const VertexId root = check_spanning_tree(g, parents);
      const int threads = seq ? 1 : build_threads;
      const auto tree = build_tree_adjacency(g, std::move(parents), threads);
      const auto c = seq ? sequential_build(g, tree, root) : build_compact(g, tree, root, threads);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      save_compact(c, build_out);
      std::printf("built n=%zu m=%zu mode=%s threads=%d seconds=%.6f payload_bits=%zu support_bits=%zu\n",
                  c.n, c.m, seq ? "seq" : "par", threads, seconds, c.payload_bits(), c.support_bits());
    } else if (*query) {
      const auto c = load_compact(query_in, 1);
      if (op == "counting") {
        std::cout << counting(c, static_cast<VertexId>(arg)) << '\n';
      } else if (op == "listing") {
        print_list(listing(c, static_cast<VertexId>(arg)));
      } else {
        print_list(face(c, arg));
      }
    } else if (*decode_cmd) {
      const auto decoded = decode_with_tree(load_compact(dec_in, 1));
      write_embedding_file(decoded.graph, dec_out);
      if (!dec_tree.empty()) write_tree_file(decoded.parent_edge, dec_tree);
    } else if (*bench) {
      BenchOptions options;
      options.threads = parse_thread_list(thread_list);
      options.reps = reps;
      options.deterministic = bench_deterministic;
      options.dataset = dataset.empty() ? std::filesystem::path(bench_in).stem().string() : dataset;
      const auto g = read_embedding_file(bench_in);
      std::ofstream csv(bench_csv);
      if (!csv) throw std::runtime_error("cannot write " + bench_csv);
      write_bench_csv(csv, run_build_bench(g, options));
      if (!query_csv.empty()) {
        std::ofstream qcsv(query_csv);
        if (!qcsv) throw std::runtime_error("cannot write " + query_csv);
        write_query_csv(qcsv, run_query_bench(g, options.dataset, 10, 100000, 1));
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
