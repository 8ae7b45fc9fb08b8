#include "pemb/spanning_tree.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

#include "pemb/parallel.hpp"

namespace pemb {

namespace {

constexpr EdgeIndex kUnclaimed = kNoEdge - 1;

struct DfsFrame {
  VertexId vertex;
  EdgeIndex cursor;
  std::uint32_t remaining;
};

void check_root(const PlanarEmbedding& g, VertexId root) {
  if (root < 1 || root > g.n) throw std::invalid_argument("root vertex out of range");
}

class ParallelTreeBuilder {
 public:
  ParallelTreeBuilder(const PlanarEmbedding& g, ParentEdges& parents, std::size_t threshold)
      : g_(g), parents_(parents), threshold_(threshold) {}

  bool claim(VertexId w, EdgeIndex via) {
    std::atomic_ref<EdgeIndex> slot(parents_[w]);
    EdgeIndex expected = kUnclaimed;
    if (slot.load(std::memory_order_relaxed) != kUnclaimed) return false;
    return slot.compare_exchange_strong(expected, via, std::memory_order_relaxed);
  }

  void expand(VertexId v, tracked_vector<VertexId>& stack) {
    const auto [first, last] = g_.vertices[v];
    for (EdgeIndex e = first; e <= last; ++e) {
      const auto& edge = g_.edges[e];
      if (claim(edge.tgt, edge.cmp)) stack.push_back(edge.tgt);
    }
  }

  void explore(tracked_vector<VertexId> stack) {
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      expand(v, stack);
      if (stack.size() > threshold_) {
        const auto half = stack.size() / 2;
        auto* part = new tracked_vector<VertexId>(stack.begin(), stack.begin() + half);
        stack.erase(stack.begin(), stack.begin() + half);
#pragma omp task firstprivate(part)
        {
          explore(std::move(*part));
          delete part;
        }
      }
    }
  }

 private:
  const PlanarEmbedding& g_;
  ParentEdges& parents_;
  std::size_t threshold_;
};

}  // namespace

std::size_t SpanningTreeData::heap_size() const {
  return heap_bytes(parents) + heap_bytes(parent_edge) + tree_mark.heap_size() + heap_bytes(edges) +
         heap_bytes(vertices) + heap_bytes(ref) + heap_bytes(gaps);
}

ParentEdges sequential_dfs_parents(const PlanarEmbedding& g, VertexId root) {
  check_root(g, root);
  ParentEdges parents(g.n + 1, kUnclaimed);
  parents[0] = kNoEdge;
  parents[root] = kNoEdge;
  tracked_vector<DfsFrame> stack;
  stack.push_back({root, g.vertices[root].first, static_cast<std::uint32_t>(g.degree(root))});
  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.remaining == 0) {
      stack.pop_back();
      continue;
    }
    const EdgeIndex e = top.cursor;
    top.cursor = g.next_ccw(e);
    --top.remaining;
    const auto& edge = g.edges[e];
    if (parents[edge.tgt] != kUnclaimed) continue;
    parents[edge.tgt] = edge.cmp;
    stack.push_back({edge.tgt, g.next_ccw(edge.cmp), static_cast<std::uint32_t>(g.degree(edge.tgt) - 1)});
  }
  return parents;
}

ParentEdges parallel_spanning_tree(const PlanarEmbedding& g, VertexId root, int threads,
                                   bool deterministic) {
  if (threads < 1) throw std::invalid_argument("parallel_spanning_tree: threads must be >= 1");
  check_root(g, root);
  if (deterministic) return sequential_dfs_parents(g, root);

  ParentEdges parents(g.n + 1, kUnclaimed);
  parents[0] = kNoEdge;
  parents[root] = kNoEdge;
  const auto p = static_cast<std::size_t>(threads);
  ParallelTreeBuilder builder(g, parents, std::max<std::size_t>(g.n / p, 64));

  // Stub tree: grow sequentially until there is one leaf per thread.
  tracked_vector<VertexId> leaves{root};
  while (!leaves.empty() && leaves.size() < p) {
    const VertexId v = leaves.back();
    leaves.pop_back();
    builder.expand(v, leaves);
  }

  if (!leaves.empty()) {
#pragma omp parallel num_threads(threads)
#pragma omp single
    for (std::size_t t = 0; t < p; ++t) {
      auto* seeds = new tracked_vector<VertexId>();
      for (std::size_t k = t; k < leaves.size(); k += p) seeds->push_back(leaves[k]);
#pragma omp task firstprivate(seeds)
      {
        builder.explore(std::move(*seeds));
        delete seeds;
      }
    }
  }
  return parents;
}

VertexId check_spanning_tree(const PlanarEmbedding& g, const ParentEdges& parents) {
  if (parents.size() != g.n + 1) throw std::invalid_argument("parent array has the wrong length");
  VertexId root = kNoVertex;
  for (VertexId v = 1; v <= g.n; ++v) {
    const EdgeIndex e = parents[v];
    if (e == kNoEdge) {
      if (root != kNoVertex) throw std::invalid_argument("parent array has more than one root");
      root = v;
      continue;
    }
    if (e >= g.edges.size() || g.edges[e].src != v) {
      throw std::invalid_argument("parent edge of vertex " + std::to_string(v) + " does not leave it");
    }
  }
  if (root == kNoVertex) throw std::invalid_argument("parent array has no root");

  // 0 = unseen, 1 = on the current walk, 2 = reaches the root.
  std::vector<std::uint8_t> state(g.n + 1, 0);
  state[root] = 2;
  std::vector<VertexId> walk;
  for (VertexId start = 1; start <= g.n; ++start) {
    VertexId v = start;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = g.edges[parents[v]].tgt;
    }
    if (state[v] == 1) throw std::invalid_argument("parent references contain a cycle");
    for (const VertexId w : walk) state[w] = 2;
    walk.clear();
  }
  return root;
}

tracked_vector<VertexId> parent_vertices(const PlanarEmbedding& g, const ParentEdges& parents) {
  tracked_vector<VertexId> out(parents.size(), kNoVertex);
  for (std::size_t v = 1; v < parents.size(); ++v) {
    if (parents[v] != kNoEdge) out[v] = g.edges[parents[v]].tgt;
  }
  return out;
}

SpanningTreeData build_tree_adjacency(const PlanarEmbedding& g, ParentEdges parents, int threads) {
  if (threads < 1) throw std::invalid_argument("build_tree_adjacency: threads must be >= 1");
  SpanningTreeData t;
  t.root = check_spanning_tree(g, parents);
  const std::size_t n = g.n;
  const std::size_t total = g.edges.size();

  // Mark tree edges, one word of E_G per iteration so writes never share a word.
  BitArray marks(total);
  const auto mark_words = marks.words();
  const auto words = static_cast<std::ptrdiff_t>(mark_words.size());
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::ptrdiff_t w = 0; w < words; ++w) {
    std::uint64_t bits = 0;
    const std::size_t begin = static_cast<std::size_t>(w) * 64;
    const std::size_t end = std::min(begin + 64, total);
    for (std::size_t e = begin; e < end; ++e) {
      const auto& edge = g.edges[e];
      const bool tree = parents[edge.src] == e || parents[edge.tgt] == edge.cmp;
      bits |= std::uint64_t{tree} << (e - begin);
    }
    mark_words[static_cast<std::size_t>(w)] = bits;
  }
  t.tree_mark = build_rank_select(std::move(marks), threads);

  // Tree degree per vertex, then offsets into E_T by prefix sum.
  t.vertices.resize(n + 1);
  tracked_vector<std::uint32_t> offsets(n + 1, 0);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t v = 1; v <= n; ++v) {
    const auto [first, last] = g.vertices[v];
    offsets[v] = static_cast<std::uint32_t>(t.tree_mark.rank1(std::size_t{last} + 1) -
                                            t.tree_mark.rank1(first));
  }
  const auto tree_total = exclusive_scan_inplace(offsets, threads);
  if (tree_total != 2 * (n - 1)) throw std::invalid_argument("tree edge count is not 2(n-1)");

  t.edges.resize(tree_total);
  t.ref.resize(tree_total);
  t.gaps.resize(tree_total);
  t.vertices[0] = {kNoEdge, kNoEdge};
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t v = 1; v <= n; ++v) {
    const auto vid = static_cast<VertexId>(v);
    const auto [first, last] = g.vertices[v];
    EdgeIndex start = parents[v];
    if (vid == t.root) {
      start = first;
      while (!t.tree_mark.bit(start)) ++start;
    }
    const std::size_t degree = std::size_t{last} - first + 1;
    EdgeIndex pos = offsets[v];
    EdgeIndex current = kNoEdge;
    EdgeIndex e = start;
    for (std::size_t k = 0; k < degree; ++k, e = (e == last ? first : e + 1)) {
      if (!t.tree_mark.bit(e)) {
        ++t.gaps[current];
        continue;
      }
      current = pos++;
      const auto& edge = g.edges[e];
      t.edges[current].src = vid;
      t.edges[current].tgt = edge.tgt;
      t.ref[current] = e;
      t.gaps[current] = 0;
      if (e != parents[v]) {
        // Child edge: pair it with the child's parent edge, which is first
        // in the child's group. Only this thread writes that cmp field.
        const EdgeIndex child_first = offsets[edge.tgt];
        t.edges[current].cmp = child_first;
        t.edges[child_first].cmp = current;
      }
    }
    t.vertices[v] = {offsets[v], pos - 1};
  }

  t.parents = parent_vertices(g, parents);
  t.parent_edge = std::move(parents);
  return t;
}

SpanningTreeData sequential_dfs_tree(const PlanarEmbedding& g, VertexId root) {
  return build_tree_adjacency(g, sequential_dfs_parents(g, root), 1);
}

}  // namespace pemb
