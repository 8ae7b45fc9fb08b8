#include "pemb/decode.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pemb/queries.hpp"

namespace pemb {

DecodedEmbedding decode_with_tree(const CompactEmbedding& c, int threads) {
  const std::size_t ticks = 2 * c.m;
  tracked_vector<VertexId> owner(ticks + 1);
  tracked_vector<EdgeIndex> slot(ticks + 1);
  owner[0] = kNoVertex;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t i = 1; i <= ticks; ++i) owner[i] = vertex(c, i);

  // Stable counting sort of ticks by vertex: ticks of a vertex increase
  // along its rotation.
  tracked_vector<EdgeIndex> start(c.n + 2, 0);
  for (std::size_t i = 1; i <= ticks; ++i) ++start[owner[i] + 1];
  for (std::size_t v = 1; v <= c.n + 1; ++v) start[v] += start[v - 1];
  for (std::size_t i = 1; i <= ticks; ++i) slot[i] = start[owner[i]]++;

  tracked_vector<DirectedEdge> edges(ticks);
  ParentEdges parents(c.n + 1, kNoEdge);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t i = 1; i <= ticks; ++i) {
    const Tick other = mate(c, i);
    edges[slot[i]] = {owner[i], owner[other], slot[other]};
    // The closing tick of a tree edge is the visited vertex's parent edge.
    if (c.A.access(i) && c.B.access(c.A.rank1(i))) parents[owner[i]] = slot[i];
  }
  DecodedEmbedding out;
  out.graph = embedding_from_edges(c.n, std::move(edges));
  out.parent_edge = std::move(parents);
  return out;
}

PlanarEmbedding decode(const CompactEmbedding& c, int threads) {
  return decode_with_tree(c, threads).graph;
}

std::string write_tree(const ParentEdges& parents) {
  std::string out = "tree " + std::to_string(parents.size() - 1) + '\n';
  for (std::size_t v = 1; v < parents.size(); ++v) {
    out += std::to_string(parents[v] == kNoEdge ? 0 : std::uint64_t{parents[v]} + 1);
    out += '\n';
  }
  return out;
}

ParentEdges parse_tree(std::string_view text, const PlanarEmbedding& g) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  ParentEdges parents;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!header) {
      std::string word;
      std::size_t n = 0;
      if (!(fields >> word >> n) || word != "tree") throw ParseError(number, "expected 'tree <n>' header");
      if (n != g.n) throw ParseError(number, "tree size does not match the embedding");
      parents.reserve(n + 1);
      parents.push_back(kNoEdge);
      header = true;
      continue;
    }
    std::uint64_t ref = 0;
    if (!(fields >> ref)) throw ParseError(number, "malformed parent reference");
    if (ref > g.edges.size()) throw ParseError(number, "parent reference out of range");
    if (parents.size() > g.n) throw ParseError(number, "too many parent references");
    parents.push_back(ref == 0 ? kNoEdge : static_cast<EdgeIndex>(ref - 1));
  }
  if (!header || parents.size() != g.n + 1) throw ParseError(number, "expected one parent reference per vertex");
  check_spanning_tree(g, parents);
  return parents;
}

ParentEdges read_tree_file(const std::filesystem::path& path, const PlanarEmbedding& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tree(buffer.str(), g);
}

void write_tree_file(const ParentEdges& parents, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_tree(parents);
}

}  // namespace pemb
