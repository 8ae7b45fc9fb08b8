#include "pemb/queries.hpp"

#include <stdexcept>
#include <string>

namespace pemb {

namespace {

void check_vertex(const CompactEmbedding& c, VertexId v) {
  if (v < 1 || v > c.n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

void check_tick(const CompactEmbedding& c, Tick i) {
  if (i < 1 || i > 2 * c.m) throw std::out_of_range("tick " + std::to_string(i) + " out of range");
}

// B[k] with B[0] read as an open parenthesis.
bool closes(const ParenSequence& b, std::size_t k) { return k != 0 && b.access(k); }

}  // namespace

Tick first(const CompactEmbedding& c, VertexId v) {
  check_vertex(c, v);
  return c.A.select1(c.B.bits().select0(v - 1)) + 1;
}

std::optional<Tick> next(const CompactEmbedding& c, Tick i) {
  check_tick(c, i);
  if (!c.A.access(i)) {
    if (i < 2 * c.m) return i + 1;
    return std::nullopt;
  }
  if (!c.B.access(c.A.rank1(i))) {
    const Tick after = mate(c, i) + 1;
    if (after <= 2 * c.m) return after;
  }
  return std::nullopt;
}

Tick mate(const CompactEmbedding& c, Tick i) {
  check_tick(c, i);
  if (!c.A.access(i)) return c.A.select0(c.Bstar.match(c.A.rank0(i)));
  return c.A.select1(c.B.match(c.A.rank1(i)));
}

VertexId vertex(const CompactEmbedding& c, Tick i) {
  check_tick(c, i);
  const auto& bits = c.B.bits();
  const std::size_t r = c.A.rank1(i);
  std::size_t node;
  if (!c.A.access(i)) {
    node = closes(c.B, r) ? c.B.parent(bits.rank0(c.B.match(r))) : bits.rank0(r);
  } else {
    node = closes(c.B, r) ? bits.rank0(c.B.match(r)) : c.B.parent(bits.rank0(r));
  }
  return static_cast<VertexId>(node + 1);
}

std::size_t counting(const CompactEmbedding& c, VertexId v) {
  std::size_t degree = 0;
  for (std::optional<Tick> t = first(c, v); t; t = next(c, *t)) ++degree;
  return degree;
}

std::vector<VertexId> listing(const CompactEmbedding& c, VertexId v) {
  std::vector<VertexId> out;
  for (std::optional<Tick> t = first(c, v); t; t = next(c, *t)) out.push_back(vertex(c, mate(c, *t)));
  return out;
}

Tick face_successor(const CompactEmbedding& c, Tick e) {
  const Tick other = mate(c, e);
  if (const auto n = next(c, other)) return *n;
  return first(c, vertex(c, other));
}

std::vector<VertexId> face(const CompactEmbedding& c, Tick e) {
  check_tick(c, e);
  std::vector<VertexId> out;
  Tick t = e;
  do {
    out.push_back(vertex(c, t));
    t = face_successor(c, t);
  } while (t != e);
  return out;
}

VertexId neighbor(const CompactEmbedding& c, VertexId v, std::size_t k) {
  std::optional<Tick> t = first(c, v);
  for (std::size_t s = 0; s < k && t; ++s) t = next(c, *t);
  if (!t) throw std::out_of_range("neighbour offset beyond the degree");
  return vertex(c, mate(c, *t));
}

}  // namespace pemb
