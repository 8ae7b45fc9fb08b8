#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pemb/embedding.hpp"

namespace pemb {

inline constexpr const char* kPhases[] = {"spanning-tree", "euler", "list-rank", "scatter",
                                          "bstar",         "support", "total"};
inline constexpr std::size_t kPhaseCount = 7;

struct BenchRecord {
  std::string dataset;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string mode;  // "seq" or "par"
  int threads = 1;   // threads actually used
  int requested_threads = 1;
  std::string phase;
  double median_seconds = 0;
  std::size_t peak_bytes = 0;  // accountant peak over the whole build, per run
  std::size_t payload_bits = 0;
  std::size_t support_bits = 0;
  std::size_t input_bytes = 0;  // adjacency representation of the input
  std::size_t os_peak_bytes = 0;
};

struct BenchOptions {
  std::string dataset = "input";
  std::vector<int> threads{1, 2, 4, 8};
  int reps = 5;
  bool deterministic = false;
  bool cap_threads = true;  // clamp to the detected logical cores
};

// Seven rows for the seq baseline, then seven per thread count. Phase
// times are medians over the repetitions; total is the median of the
// measured end-to-end time, not a sum.
std::vector<BenchRecord> run_build_bench(const PlanarEmbedding& g, const BenchOptions& options);

std::string bench_csv_header();
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows);

struct QueryRecord {
  std::string dataset;
  std::string structure;  // "compact" or "adjacency"
  std::string op;         // counting, listing, face
  std::size_t samples = 0;
  int reps = 0;
  double total_seconds = 0;
  double ns_per_query = 0;
};

// counting and listing `reps` times per sampled vertex, face `reps` times
// per sampled tick; at most `max_samples` of each, drawn with `seed`.
std::vector<QueryRecord> run_query_bench(const PlanarEmbedding& g, const std::string& dataset, int reps,
                                         std::size_t max_samples, std::uint64_t seed);

std::string query_csv_header();
void write_query_csv(std::ostream& out, const std::vector<QueryRecord>& rows);

double median(std::vector<double> values);

}  // namespace pemb
