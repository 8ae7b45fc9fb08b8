#include "pemb/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pemb/construction.hpp"
#include "pemb/memory.hpp"
#include "pemb/parallel.hpp"
#include "pemb/queries.hpp"
#include "pemb/spanning_tree.hpp"

namespace pemb {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Run {
  std::array<double, kPhaseCount> seconds{};
  std::size_t peak_bytes = 0;
  std::size_t payload_bits = 0;
  std::size_t support_bits = 0;
};

Run run_once(const PlanarEmbedding& g, int threads, bool seq, bool deterministic) {
  Run run;
  PhaseTimings phases;
  PeakScope scope;
  const auto start = Clock::now();
  SpanningTreeData tree;
  if (seq) {
    tree = sequential_dfs_tree(g, 1);
  } else {
    tree = build_tree_adjacency(g, parallel_spanning_tree(g, 1, threads, deterministic), threads);
  }
  run.seconds[0] = seconds_since(start);
  const CompactEmbedding c =
      seq ? sequential_build(g, tree, 1, &phases) : build_compact(g, tree, 1, threads, &phases);
  run.seconds[6] = seconds_since(start);
  run.seconds[1] = phases.euler;
  run.seconds[2] = phases.list_rank;
  run.seconds[3] = phases.scatter;
  run.seconds[4] = phases.bstar;
  run.seconds[5] = phases.support;
  run.peak_bytes = scope.peak_bytes();
  run.payload_bits = c.payload_bits();
  run.support_bits = c.support_bits();
  return run;
}

void append_rows(std::vector<BenchRecord>& out, const PlanarEmbedding& g, const BenchOptions& options,
                 bool seq, int requested) {
  const int threads = seq ? 1 : (options.cap_threads ? std::min(requested, hardware_threads()) : requested);
  std::vector<Run> runs;
  for (int r = 0; r < options.reps; ++r) runs.push_back(run_once(g, threads, seq, options.deterministic));
  std::size_t peak = 0;
  for (const auto& run : runs) peak = std::max(peak, run.peak_bytes);
  for (std::size_t p = 0; p < kPhaseCount; ++p) {
    std::vector<double> samples;
    for (const auto& run : runs) samples.push_back(run.seconds[p]);
    BenchRecord row;
    row.dataset = options.dataset;
    row.n = g.n;
    row.m = g.m;
    row.mode = seq ? "seq" : "par";
    row.threads = threads;
    row.requested_threads = seq ? 1 : requested;
    row.phase = kPhases[p];
    row.median_seconds = median(std::move(samples));
    row.peak_bytes = peak;
    row.payload_bits = runs.front().payload_bits;
    row.support_bits = runs.front().support_bits;
    row.input_bytes = g.adjacency_bytes();
    row.os_peak_bytes = os_peak_rss_bytes();
    out.push_back(std::move(row));
  }
}

std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

// Adjacency-list counterparts of the compact queries.
std::size_t adjacency_listing_sum(const PlanarEmbedding& g, VertexId v) {
  std::size_t sum = 0;
  const auto [first, last] = g.vertices[v];
  for (EdgeIndex e = first; e <= last; ++e) sum += g.edges[e].tgt;
  return sum;
}

std::size_t adjacency_face_sum(const PlanarEmbedding& g, EdgeIndex e) {
  std::size_t sum = 0;
  EdgeIndex k = e;
  do {
    sum += g.edges[k].src;
    k = g.face_successor(k);
  } while (k != e);
  return sum;
}

template <class F>
QueryRecord time_queries(const std::string& dataset, const char* structure, const char* op,
                         const std::vector<std::size_t>& args, int reps, F&& query) {
  volatile std::size_t sink = 0;
  const auto start = Clock::now();
  for (int r = 0; r < reps; ++r) {
    for (const auto a : args) sink = sink + query(a);
  }
  QueryRecord row{dataset, structure, op, args.size(), reps, seconds_since(start), 0};
  const double calls = static_cast<double>(args.size()) * reps;
  row.ns_per_query = calls > 0 ? row.total_seconds * 1e9 / calls : 0;
  return row;
}

std::vector<std::size_t> sample(std::size_t count, std::size_t limit, std::mt19937_64& rng) {
  std::vector<std::size_t> all(count);
  std::iota(all.begin(), all.end(), std::size_t{1});
  if (count > limit) {
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(limit);
  }
  return all;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  return (*mid + *std::max_element(values.begin(), mid)) / 2;
}

std::vector<BenchRecord> run_build_bench(const PlanarEmbedding& g, const BenchOptions& options) {
  if (options.reps < 1) throw std::invalid_argument("repetitions must be >= 1");
  for (const int t : options.threads) {
    if (t < 1) throw std::invalid_argument("thread counts must be >= 1");
  }
  std::vector<BenchRecord> rows;
  append_rows(rows, g, options, true, 1);
  for (const int t : options.threads) append_rows(rows, g, options, false, t);
  return rows;
}

std::string bench_csv_header() {
  return "dataset,n,m,mode,threads,requested_threads,phase,median_seconds,peak_bytes,payload_bits,"
         "support_bits,input_bytes,os_peak_bytes";
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << bench_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.n << ',' << r.m << ',' << r.mode << ',' << r.threads << ','
        << r.requested_threads << ',' << r.phase << ',' << fixed6(r.median_seconds) << ',' << r.peak_bytes
        << ',' << r.payload_bits << ',' << r.support_bits << ',' << r.input_bytes << ',' << r.os_peak_bytes
        << '\n';
  }
}

std::vector<QueryRecord> run_query_bench(const PlanarEmbedding& g, const std::string& dataset, int reps,
                                         std::size_t max_samples, std::uint64_t seed) {
  if (reps < 1) throw std::invalid_argument("repetitions must be >= 1");
  const auto tree = sequential_dfs_tree(g, 1);
  const auto c = build_compact(g, tree, 1, 1);
  std::mt19937_64 rng(seed);
  const auto vertices = sample(g.n, max_samples, rng);
  const auto ticks = sample(2 * g.m, max_samples, rng);

  std::vector<QueryRecord> rows;
  rows.push_back(time_queries(dataset, "compact", "counting", vertices, reps,
                              [&](std::size_t v) { return counting(c, static_cast<VertexId>(v)); }));
  rows.push_back(time_queries(dataset, "adjacency", "counting", vertices, reps,
                              [&](std::size_t v) { return g.degree(static_cast<VertexId>(v)); }));
  rows.push_back(time_queries(dataset, "compact", "listing", vertices, reps, [&](std::size_t v) {
    const auto list = listing(c, static_cast<VertexId>(v));
    return std::accumulate(list.begin(), list.end(), std::size_t{0});
  }));
  rows.push_back(time_queries(dataset, "adjacency", "listing", vertices, reps, [&](std::size_t v) {
    return adjacency_listing_sum(g, static_cast<VertexId>(v));
  }));
  rows.push_back(time_queries(dataset, "compact", "face", ticks, reps, [&](std::size_t t) {
    const auto orbit = face(c, t);
    return std::accumulate(orbit.begin(), orbit.end(), std::size_t{0});
  }));
  rows.push_back(time_queries(dataset, "adjacency", "face", ticks, reps, [&](std::size_t t) {
    return adjacency_face_sum(g, static_cast<EdgeIndex>(t - 1));
  }));
  return rows;
}

std::string query_csv_header() { return "dataset,structure,op,samples,reps,total_seconds,ns_per_query"; }

void write_query_csv(std::ostream& out, const std::vector<QueryRecord>& rows) {
  out << query_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.structure << ',' << r.op << ',' << r.samples << ',' << r.reps << ','
        << fixed6(r.total_seconds) << ',' << fixed6(r.ns_per_query) << '\n';
  }
}

}  // namespace pemb
