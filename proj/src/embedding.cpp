#include "pemb/embedding.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace pemb {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadVertexRange: return "vertex-range";
    case ViolationKind::kDanglingTwin: return "dangling-twin";
    case ViolationKind::kTwinIsSelf: return "twin-is-self";
    case ViolationKind::kNonInvolutiveTwin: return "non-involutive-twin";
    case ViolationKind::kTwinEndpointMismatch: return "twin-endpoint-mismatch";
    case ViolationKind::kDisconnected: return "disconnected";
    case ViolationKind::kEulerFormula: return "euler-formula";
  }
  return "unknown";
}

namespace {

std::string edge_name(EdgeIndex e) { return "edge " + std::to_string(std::size_t{e} + 1); }

// Vertices reachable from vertex 1 through tgt pointers.
std::size_t reachable_from_root(const PlanarEmbedding& g) {
  std::vector<bool> seen(g.n + 1, false);
  std::vector<VertexId> stack{1};
  seen[1] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeIndex e = g.vertices[v].first; e <= g.vertices[v].last; ++e) {
      const VertexId w = g.edges[e].tgt;
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

void check_twins(const PlanarEmbedding& g, std::vector<Violation>& out) {
  const std::size_t total = g.edges.size();
  for (EdgeIndex e = 0; e < total; ++e) {
    const auto& edge = g.edges[e];
    if (edge.cmp >= total) {
      out.push_back({ViolationKind::kDanglingTwin, edge_name(e) + " points to missing twin"});
      continue;
    }
    if (edge.cmp == e) {
      out.push_back({ViolationKind::kTwinIsSelf, edge_name(e) + " is its own twin"});
      continue;
    }
    const auto& twin = g.edges[edge.cmp];
    if (twin.cmp != e) {
      out.push_back({ViolationKind::kNonInvolutiveTwin,
                     edge_name(e) + " -> " + edge_name(edge.cmp) + " does not point back"});
    }
    if (twin.src != edge.tgt || twin.tgt != edge.src) {
      out.push_back({ViolationKind::kTwinEndpointMismatch,
                     edge_name(e) + " and its twin do not swap endpoints"});
    }
  }
}

}  // namespace

std::size_t count_faces(const PlanarEmbedding& g) {
  std::vector<bool> seen(g.edges.size(), false);
  std::size_t faces = 0;
  for (EdgeIndex start = 0; start < g.edges.size(); ++start) {
    if (seen[start]) continue;
    ++faces;
    EdgeIndex e = start;
    do {
      seen[e] = true;
      e = g.face_successor(e);
    } while (e != start);
  }
  return faces;
}

std::vector<Violation> validate(const PlanarEmbedding& g) {
  std::vector<Violation> out;
  if (g.n < 2 || g.m < 1) {
    out.push_back({ViolationKind::kBadVertexRange, "need n >= 2 and m >= 1"});
    return out;
  }
  if (g.vertices.size() != g.n + 1 || g.edges.size() != 2 * g.m) {
    out.push_back({ViolationKind::kBadVertexRange, "array sizes disagree with n and m"});
    return out;
  }

  std::size_t expected_first = 0;
  for (VertexId v = 1; v <= g.n; ++v) {
    const auto [first, last] = g.vertices[v];
    if (first != expected_first || first > last || last >= g.edges.size()) {
      out.push_back({ViolationKind::kBadVertexRange,
                     "vertex " + std::to_string(v) + " range does not continue the partition"});
      return out;
    }
    for (EdgeIndex e = first; e <= last; ++e) {
      if (g.edges[e].src != v) {
        out.push_back({ViolationKind::kBadVertexRange,
                       edge_name(e) + " lies in the group of vertex " + std::to_string(v) +
                           " but has src " + std::to_string(g.edges[e].src)});
      }
      if (g.edges[e].tgt < 1 || g.edges[e].tgt > g.n) {
        out.push_back({ViolationKind::kBadVertexRange, edge_name(e) + " has target out of range"});
      }
    }
    expected_first = std::size_t{last} + 1;
  }
  if (expected_first != g.edges.size()) {
    out.push_back({ViolationKind::kBadVertexRange, "vertex groups do not cover all edges"});
  }
  if (!out.empty()) return out;

  check_twins(g, out);
  if (!out.empty()) return out;

  if (const auto reached = reachable_from_root(g); reached != g.n) {
    out.push_back({ViolationKind::kDisconnected, std::to_string(g.n - reached) +
                                                     " vertices unreachable from vertex 1"});
    return out;
  }

  const auto faces = count_faces(g);
  const auto euler = static_cast<long long>(g.n) - static_cast<long long>(g.m) +
                     static_cast<long long>(faces);
  if (euler != 2) {
    out.push_back({ViolationKind::kEulerFormula,
                   "n - m + f = " + std::to_string(g.n) + " - " + std::to_string(g.m) + " + " +
                       std::to_string(faces) + " = " + std::to_string(euler) + ", expected 2"});
  }
  return out;
}

PlanarEmbedding embedding_from_edges(std::size_t n, tracked_vector<DirectedEdge> edges) {
  PlanarEmbedding g;
  g.n = n;
  g.m = edges.size() / 2;
  g.vertices.assign(n + 1, VertexRange{kNoEdge, kNoEdge});
  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    const VertexId v = edges[e].src;
    if (v < 1 || v > n) throw std::invalid_argument("edge source out of range");
    auto& r = g.vertices[v];
    if (r.first == kNoEdge) r.first = e;
    else if (r.last + 1 != e) throw std::invalid_argument("edges are not grouped by source");
    r.last = e;
  }
  for (VertexId v = 1; v <= n; ++v) {
    if (g.vertices[v].first == kNoEdge) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no edges");
    }
  }
  g.edges = std::move(edges);
  return g;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next non-comment, non-blank line; false at end of input.
  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      const auto end = text_.find('\n', pos_);
      const auto stop = end == std::string_view::npos ? text_.size() : end;
      line = text_.substr(pos_, stop - pos_);
      pos_ = stop + 1;
      ++number_;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

// Splits a line into exactly N unsigned integers.
template <std::size_t N>
bool read_fields(std::string_view line, std::array<std::uint64_t, N>& out) {
  const char* p = line.data();
  const char* end = line.data() + line.size();
  for (std::size_t k = 0; k < N; ++k) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    auto [next, ec] = std::from_chars(p, end, out[k]);
    if (ec != std::errc{} || next == p) return false;
    p = next;
  }
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  return p == end;
}

}  // namespace

PlanarEmbedding parse_embedding(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw ParseError(reader.number(), "missing 'pg <n> <m>' header");
  const std::size_t header_line = reader.number();
  if (!line.starts_with("pg")) throw ParseError(header_line, "header must start with 'pg'");
  std::array<std::uint64_t, 2> header{};
  if (!read_fields(line.substr(2), header)) {
    throw ParseError(header_line, "malformed header, expected 'pg <n> <m>'");
  }
  const auto [n, m] = header;
  if (n < 2 || m < 1) throw ParseError(header_line, "need n >= 2 and m >= 1");
  if (2 * m >= kNoEdge || n >= kNoEdge) throw ParseError(header_line, "graph too large");

  tracked_vector<DirectedEdge> edges;
  edges.reserve(2 * m);
  std::vector<std::size_t> lines;
  lines.reserve(2 * m);
  VertexId previous_src = 0;
  std::array<std::uint64_t, 3> f{};
  while (edges.size() < 2 * m) {
    if (!reader.next(line)) {
      throw ParseError(reader.number(), "expected " + std::to_string(2 * m) + " edge lines, found " +
                                            std::to_string(edges.size()));
    }
    const auto at = reader.number();
    if (!read_fields(line, f)) throw ParseError(at, "malformed edge line, expected '<src> <tgt> <cmp>'");
    const auto [src, tgt, cmp] = f;
    if (src < 1 || src > n) throw ParseError(at, "src " + std::to_string(src) + " out of range");
    if (tgt < 1 || tgt > n) throw ParseError(at, "tgt " + std::to_string(tgt) + " out of range");
    if (cmp < 1 || cmp > 2 * m) throw ParseError(at, "dangling twin reference " + std::to_string(cmp));
    if (src < previous_src) throw ParseError(at, "edges not grouped by ascending src");
    if (src > previous_src + 1) {
      throw ParseError(at, "vertex " + std::to_string(previous_src + 1) +
                               " has no edges (graph is disconnected)");
    }
    previous_src = static_cast<VertexId>(src);
    edges.push_back({static_cast<VertexId>(src), static_cast<VertexId>(tgt),
                     static_cast<EdgeIndex>(cmp - 1)});
    lines.push_back(at);
  }
  if (reader.next(line)) throw ParseError(reader.number(), "unexpected content after the edge list");
  if (previous_src != n) {
    throw ParseError(header_line, "vertex " + std::to_string(previous_src + 1) +
                                      " has no edges (graph is disconnected)");
  }

  for (EdgeIndex e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.cmp == e) throw ParseError(lines[e], "edge is its own twin");
    const auto& twin = edges[edge.cmp];
    if (twin.cmp != e) {
      throw ParseError(lines[e], "non-involutive cmp: twin " + std::to_string(std::size_t{edge.cmp} + 1) +
                                     " points to " + std::to_string(std::size_t{twin.cmp} + 1));
    }
    if (twin.src != edge.tgt || twin.tgt != edge.src) {
      throw ParseError(lines[e], "twin does not swap src and tgt");
    }
  }

  PlanarEmbedding g = embedding_from_edges(n, std::move(edges));
  if (const auto reached = reachable_from_root(g); reached != n) {
    throw ParseError(header_line, "disconnected graph: " + std::to_string(n - reached) +
                                      " vertices unreachable from vertex 1");
  }
  const auto faces = count_faces(g);
  if (n + faces != m + 2) {
    throw ParseError(header_line, "Euler-formula violation: n - m + f = " +
                                      std::to_string(static_cast<long long>(n + faces) -
                                                     static_cast<long long>(m)) +
                                      " with f = " + std::to_string(faces));
  }
  return g;
}

std::string write_embedding(const PlanarEmbedding& g) {
  std::string out;
  out.reserve(16 + g.edges.size() * 24);
  out += "pg " + std::to_string(g.n) + ' ' + std::to_string(g.m) + '\n';
  char buf[64];
  for (const auto& e : g.edges) {
    const int len = std::snprintf(buf, sizeof buf, "%u %u %llu\n", e.src, e.tgt,
                                  static_cast<unsigned long long>(e.cmp) + 1);
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

PlanarEmbedding read_embedding_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_embedding(buffer.str());
}

void write_embedding_file(const PlanarEmbedding& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto text = write_embedding(g);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

// Neighbour directions in counterclockwise order starting east; y grows
// with the row index.
constexpr std::array<int, 8> kDc{+1, +1, 0, -1, -1, -1, 0, +1};
constexpr std::array<int, 8> kDr{0, +1, +1, +1, 0, -1, -1, -1};

class Grid {
 public:
  Grid(std::size_t side, std::uint64_t seed) : side_(side), up_diagonal_((side - 1) * (side - 1)) {
    std::mt19937_64 rng(seed);
    for (auto&& bit : up_diagonal_) bit = (rng() >> 63) != 0;
  }

  bool has(std::size_t r, std::size_t c, int d) const {
    const bool east = c + 1 < side_, west = c > 0, north = r + 1 < side_, south = r > 0;
    switch (d) {
      case 0: return east;
      case 1: return north && east && diag(r, c);
      case 2: return north;
      case 3: return north && west && !diag(r, c - 1);
      case 4: return west;
      case 5: return south && west && diag(r - 1, c - 1);
      case 6: return south;
      case 7: return south && east && !diag(r - 1, c);
    }
    return false;
  }

  // Number of present directions at (r, c) before direction d.
  std::uint32_t rank(std::size_t r, std::size_t c, int d) const {
    std::uint32_t k = 0;
    for (int x = 0; x < d; ++x) k += has(r, c, x) ? 1 : 0;
    return k;
  }

 private:
  bool diag(std::size_t r, std::size_t c) const { return up_diagonal_[r * (side_ - 1) + c]; }

  std::size_t side_;
  std::vector<bool> up_diagonal_;  // cell (r,c): true = (r,c)-(r+1,c+1)
};

}  // namespace

PlanarEmbedding generate_grid_triangulation(std::size_t side, std::uint64_t seed) {
  if (side < 2) throw std::invalid_argument("grid side must be >= 2");
  const std::size_t n = grid_vertices(side);
  const std::size_t m = grid_edges(side);
  if (2 * m >= kNoEdge) throw std::invalid_argument("grid too large");
  const Grid grid(side, seed);

  std::vector<EdgeIndex> first(n);
  EdgeIndex next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    first[v] = next;
    next += grid.rank(v / side, v % side, 8);
  }

  tracked_vector<DirectedEdge> edges;
  edges.reserve(2 * m);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = v / side, c = v % side;
    for (int d = 0; d < 8; ++d) {
      if (!grid.has(r, c, d)) continue;
      const std::size_t wr = r + kDr[d], wc = c + kDc[d];
      const std::size_t w = wr * side + wc;
      const EdgeIndex twin = first[w] + grid.rank(wr, wc, (d + 4) % 8);
      edges.push_back({static_cast<VertexId>(v + 1), static_cast<VertexId>(w + 1), twin});
    }
  }
  return embedding_from_edges(n, std::move(edges));
}

}  // namespace pemb
