#include "pemb/construction.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "pemb/parallel.hpp"

namespace pemb {

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return seconds;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void check_inputs(const PlanarEmbedding& g, const SpanningTreeData& t, VertexId init) {
  if (init != t.root) throw std::invalid_argument("init must be the root of the spanning tree");
  if (t.parent_edge.size() != g.n + 1 || t.edges.size() != 2 * (g.n - 1)) {
    throw std::invalid_argument("spanning tree does not belong to this embedding");
  }
}

}  // namespace

CompactEmbedding sequential_build(const PlanarEmbedding& g, const SpanningTreeData& t, VertexId init,
                                  PhaseTimings* timings) {
  check_inputs(g, t, init);
  PhaseTimings local;
  PhaseTimings& time = timings != nullptr ? *timings : local;
  Stopwatch watch;
  BitArray a, b, bstar;
  BitArray seen(g.edges.size());

  struct Frame {
    VertexId vertex;
    EdgeIndex cursor;
    std::uint32_t remaining;
  };
  tracked_vector<Frame> stack;
  stack.push_back({init, g.vertices[init].first, static_cast<std::uint32_t>(g.degree(init))});
  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.remaining == 0) {
      const VertexId done = top.vertex;
      stack.pop_back();
      if (done != init) {
        a.push_back(true);  // leaving through the parent edge
        b.push_back(true);
      }
      continue;
    }
    const EdgeIndex e = top.cursor;
    top.cursor = g.next_ccw(e);
    --top.remaining;
    const auto& edge = g.edges[e];
    if (t.parent_edge[edge.tgt] == edge.cmp) {
      a.push_back(true);
      b.push_back(false);
      stack.push_back({edge.tgt, g.next_ccw(edge.cmp),
                       static_cast<std::uint32_t>(g.degree(edge.tgt) - 1)});
    } else {
      a.push_back(false);
      bstar.push_back(seen.get(e));
      seen.set(edge.cmp);
    }
  }

  time.euler = watch.lap();

  CompactEmbedding c;
  c.n = g.n;
  c.m = g.m;
  c.A = build_rank_select(std::move(a), 1);
  c.B = build_bp(std::move(b), 1);
  c.Bstar = build_bp(std::move(bstar), 1);
  time.support = watch.lap();
  return c;
}

void list_ranking(std::span<EulerEntry> entries, std::size_t head, int threads) {
  if (threads < 1) throw std::invalid_argument("list_ranking: threads must be >= 1");
  const std::size_t count = entries.size();
  if (count == 0) return;
  if (head >= count) throw std::invalid_argument("list_ranking: head out of range");

  // Successors must be a permutation before any walk is trusted.
  {
    BitArray hit(count);
    std::atomic<bool> bad{false};
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t s = entries[i].succ;
      if (s >= count) {
        bad.store(true, std::memory_order_relaxed);
        continue;
      }
      std::atomic_ref<std::uint64_t> word(hit.words()[s >> 6]);
      const auto mask = std::uint64_t{1} << (s & 63);
      if (word.fetch_or(mask, std::memory_order_relaxed) & mask) bad.store(true, std::memory_order_relaxed);
    }
    if (bad.load()) throw std::invalid_argument("list_ranking: successors are not a permutation");
  }

  // Sublist heads: evenly spaced splitters plus the true head.
  const std::size_t wanted = std::min(count, 8 * static_cast<std::size_t>(threads));
  std::vector<std::size_t> heads;
  heads.reserve(wanted + 1);
  for (std::size_t k = 0; k < wanted; ++k) heads.push_back(k * count / wanted);
  heads.push_back(head);
  std::sort(heads.begin(), heads.end());
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  const std::size_t sublists = heads.size();
  BitArray is_head(count);
  for (const auto h : heads) is_head.set(h);
  const auto sublist_of = [&](std::size_t index) {
    return static_cast<std::size_t>(std::lower_bound(heads.begin(), heads.end(), index) - heads.begin());
  };

  struct Sublist {
    std::size_t next = 0;
    std::size_t length = 0;
    std::uint64_t sum_a = 0, sum_b = 0;
    std::uint64_t offset_a = 0, offset_b = 0;
  };
  std::vector<Sublist> lists(sublists);

  // Local inclusive sums inside each sublist.
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::size_t k = 0; k < sublists; ++k) {
    std::uint64_t sum_a = 0, sum_b = 0;
    std::size_t x = heads[k], length = 0;
    do {
      auto& entry = entries[x];
      sum_a += entry.rank_a;
      sum_b += entry.rank_b;
      entry.rank_a = static_cast<std::uint32_t>(sum_a);
      entry.rank_b = static_cast<std::uint32_t>(sum_b);
      x = entry.succ;
      ++length;
    } while (!is_head.get(x));
    lists[k].next = sublist_of(x);
    lists[k].length = length;
    lists[k].sum_a = sum_a;
    lists[k].sum_b = sum_b;
  }

  // Offsets along the chain of sublists, starting at the head's sublist.
  const std::size_t first = sublist_of(head);
  std::uint64_t off_a = 0, off_b = 0;
  std::size_t visited = 0, covered = 0, k = first;
  do {
    lists[k].offset_a = off_a;
    lists[k].offset_b = off_b;
    off_a += lists[k].sum_a;
    off_b += lists[k].sum_b;
    covered += lists[k].length;
    k = lists[k].next;
    ++visited;
  } while (k != first && visited <= sublists);
  if (visited != sublists || covered != count) {
    throw std::invalid_argument("list_ranking: successors do not form a single cycle");
  }

#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::size_t s = 0; s < sublists; ++s) {
    const auto add_a = lists[s].offset_a, add_b = lists[s].offset_b;
    if (add_a == 0 && add_b == 0) continue;
    std::size_t x = heads[s];
    do {
      entries[x].rank_a = static_cast<std::uint32_t>(entries[x].rank_a + add_a);
      entries[x].rank_b = static_cast<std::uint32_t>(entries[x].rank_b + add_b);
      x = entries[x].succ;
    } while (!is_head.get(x));
  }
}

CompactEmbedding build_compact(const PlanarEmbedding& g, const SpanningTreeData& t, VertexId init,
                               int threads, PhaseTimings* timings) {
  if (threads < 1) throw std::invalid_argument("build_compact: threads must be >= 1");
  check_inputs(g, t, init);
  PhaseTimings local;
  PhaseTimings& time = timings != nullptr ? *timings : local;
  Stopwatch watch;

  const std::size_t tree_edges = t.edges.size();
  const std::size_t dual_edges = 2 * (g.m - g.n + 1);
  const auto parts = static_cast<std::size_t>(threads);
  const auto& et = t.edges;
  const auto& tv = t.vertices;

  BitArray a(2 * g.m), b(tree_edges), bstar(dual_edges);
  {
    // Step 1-2: Euler-tour list with initial weights.
    tracked_vector<EulerEntry> tour(tree_edges);
#pragma omp parallel num_threads(threads)
    {
      const auto [begin, end] = static_chunk(tree_edges, parts, static_cast<std::size_t>(omp_get_thread_num()));
      for (std::size_t j = begin; j < end; ++j) {
        const auto& edge = et[j];
        auto& entry = tour[j];
        entry.rank_a = t.gaps[edge.cmp] + 1;
        entry.rank_b = 1;
        if (edge.src == init || tv[edge.src].first != j) {
          entry.value = 0;
          entry.succ = t.is_leaf(edge.tgt) ? edge.cmp : tv[edge.tgt].first + 1;
        } else {
          entry.value = 1;
          entry.succ = edge.cmp == tv[edge.tgt].last ? tv[edge.tgt].first : edge.cmp + 1;
        }
      }
    }
    time.euler = watch.lap();

    // Step 3: ranks along the tour, which starts at the root's first tree edge.
    list_ranking(tour, tv[init].first, threads);
    time.list_rank = watch.lap();

    // Step 4: scatter A and B. Non-tree edges met at the root before its
    // first tree edge open the tour, shifting every A position.
    const std::size_t lead = t.ref[tv[init].first] - g.vertices[init].first;
#pragma omp parallel num_threads(threads)
    {
      const auto [begin, end] = static_chunk(tree_edges, parts, static_cast<std::size_t>(omp_get_thread_num()));
      for (std::size_t j = begin; j < end; ++j) {
        auto& entry = tour[j];
        entry.rank_a = static_cast<std::uint32_t>(entry.rank_a - t.gaps[et[j].cmp] + lead);
        a.set_atomic(entry.rank_a - 1);
        if (entry.value) b.set_atomic(entry.rank_b - 1);
      }
    }
    time.scatter = watch.lap();

    // Step 5: B* position of every non-tree edge. pos counts the zeros of A
    // before the gap that follows tick j; non-tree edges are numbered by
    // rank over tree_mark.
    tracked_vector<std::uint32_t> d_pos(dual_edges), d_edge(dual_edges);
    const auto& mark = t.tree_mark;
#pragma omp parallel num_threads(threads)
    {
      const auto [begin, end] = static_chunk(tree_edges, parts, static_cast<std::size_t>(omp_get_thread_num()));
      for (std::size_t j = begin; j < end; ++j) {
        const EdgeIndex cmp = et[j].cmp;
        const VertexId at = et[j].tgt;
        const auto [first, last] = g.vertices[at];
        std::uint32_t pos = tour[j].rank_a - tour[j].rank_b;
        EdgeIndex k = t.ref[cmp];
        for (std::uint32_t s = 0; s < t.gaps[cmp]; ++s) {
          if (k == last) {
            k = first;
            if (at == init) pos = 0;  // wrapped onto the edges that open the tour
          } else {
            ++k;
          }
          const auto dual = static_cast<std::uint32_t>(mark.rank0(k));
          d_pos[dual] = pos;
          d_edge[pos] = dual;
          ++pos;
        }
      }
    }

    // Step 6: the later occurrence of each non-tree edge closes.
#pragma omp parallel num_threads(threads)
    {
      const auto [begin, end] = static_chunk(dual_edges, parts, static_cast<std::size_t>(omp_get_thread_num()));
      for (std::size_t j = begin; j < end; ++j) {
        const std::size_t k = mark.select0(std::size_t{d_edge[j]} + 1) - 1;
        const std::size_t twin = mark.rank0(g.edges[k].cmp);
        if (j > d_pos[twin]) bstar.set_atomic(j);
      }
    }
    time.bstar = watch.lap();
  }

  CompactEmbedding c;
  c.n = g.n;
  c.m = g.m;
  c.A = build_rank_select(std::move(a), threads);
  c.B = build_bp(std::move(b), threads);
  c.Bstar = build_bp(std::move(bstar), threads);
  time.support = watch.lap();
  return c;
}

}  // namespace pemb
