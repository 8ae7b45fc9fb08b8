#include <doctest.h>

#include <algorithm>

#include "common.hpp"

using namespace pemb;

namespace {

bool has(const std::vector<Violation>& report, ViolationKind kind) {
  return std::any_of(report.begin(), report.end(), [&](const Violation& v) { return v.kind == kind; });
}

PlanarEmbedding k5_rotation() {
  std::vector<std::vector<VertexId>> rot(6);
  for (VertexId v = 1; v <= 5; ++v) {
    for (VertexId w = 1; w <= 5; ++w) {
      if (w != v) rot[v].push_back(w);
    }
  }
  return oracle::from_rotations(rot);
}

}  // namespace

TEST_CASE("parse: single edge has one face") {
  const auto g = parse_embedding("pg 2 1\n1 2 2\n2 1 1\n");
  CHECK(g.n == 2);
  CHECK(g.m == 1);
  CHECK(count_faces(g) == 1);
  CHECK(validate(g).empty());
}

TEST_CASE("parse: triangle has two faces") {
  const auto g = parse_embedding("# K3\npg 3 3\n1 2 4\n1 3 5\n2 3 6\n2 1 1\n3 1 2\n3 2 3\n");
  CHECK(count_faces(g) == 2);
  CHECK(g.n - g.m + count_faces(g) == 2);
}

TEST_CASE("parse: fig1 fixture") {
  const auto g = testing::fig1().g;
  CHECK(g.n == 8);
  CHECK(g.m == 14);
  CHECK(count_faces(g) == 8);
  std::size_t degrees = 0;
  for (VertexId v = 1; v <= g.n; ++v) degrees += g.degree(v);
  CHECK(degrees == 28);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_embedding(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("") == 0);
  CHECK_THROWS_AS(parse_embedding(""), ParseError);
  CHECK(line_of("graph 2 1\n1 2 2\n2 1 1\n") == 1);
  CHECK(line_of("pg 2 1\n1 2\n2 1 1\n") == 2);
  CHECK(line_of("pg 2 1\n1 2 2\n2 1 7\n") == 3);               // dangling twin
  CHECK(line_of("pg 3 2\n1 2 3\n2 1 1\n3 2 4\n2 3 2\n") > 0);  // ungrouped src
  CHECK(line_of("pg 3 2\n1 2 3\n1 2 4\n2 1 1\n2 1 2\n") > 0);  // vertex 3 missing
  CHECK(line_of("pg 2 1\n1 2 2\n2 1 1\nextra\n") == 4);
  // Two disjoint edges: the cmp involution holds but vertex 3 and 4 are unreachable.
  CHECK_THROWS_WITH_AS(parse_embedding("pg 4 2\n1 2 2\n2 1 1\n3 4 4\n4 3 3\n"),
                       doctest::Contains("disconnected"), ParseError);
}

TEST_CASE("parse rejects non-involutive twins") {
  CHECK_THROWS_WITH_AS(parse_embedding("pg 3 3\n1 2 4\n1 3 5\n2 3 6\n2 1 2\n3 1 2\n3 2 3\n"),
                       doctest::Contains("non-involutive"), ParseError);
}

TEST_CASE("parse rejects a non-planar rotation system") {
  const auto text = write_embedding(k5_rotation());
  CHECK_THROWS_WITH_AS(parse_embedding(text), doctest::Contains("Euler"), ParseError);
}

TEST_CASE("validate") {
  SUBCASE("valid K3") { CHECK(validate(oracle::triangle()).empty()); }
  SUBCASE("corrupted cmp") {
    auto g = oracle::triangle();
    g.edges[0].cmp = 2;
    CHECK(has(validate(g), ViolationKind::kNonInvolutiveTwin));
  }
  SUBCASE("K5 is not planar in any rotation") {
    CHECK(has(validate(k5_rotation()), ViolationKind::kEulerFormula));
  }
  SUBCASE("dangling twin") {
    auto g = oracle::triangle();
    g.edges[1].cmp = 99;
    CHECK(has(validate(g), ViolationKind::kDanglingTwin));
  }
  SUBCASE("disconnected") {
    const auto g = embedding_from_edges(4, {{1, 2, 1}, {2, 1, 0}, {3, 4, 3}, {4, 3, 2}});
    CHECK(has(validate(g), ViolationKind::kDisconnected));
  }
}

TEST_CASE("format roundtrip") {
  for (const auto& g : {oracle::single_edge(), oracle::triangle(), oracle::k4(), testing::fig1().g,
                        generate_grid_triangulation(7, 3)}) {
    CHECK(parse_embedding(write_embedding(g)) == g);
  }
}

TEST_CASE("grid generator closed forms") {
  const auto g2 = generate_grid_triangulation(2, 1);
  CHECK(g2.n == 4);
  CHECK(g2.m == 5);
  CHECK(count_faces(g2) == 3);
  const auto g3 = generate_grid_triangulation(3, 1);
  CHECK(g3.n == 9);
  CHECK(g3.m == 16);
  CHECK(count_faces(g3) == 9);
  CHECK(generate_grid_triangulation(2, 5) == generate_grid_triangulation(2, 5));
  CHECK_THROWS(generate_grid_triangulation(1, 1));
  CHECK(write_embedding(generate_grid_triangulation(2, 1)).starts_with("pg 4 5\n"));

  for (std::size_t side = 2; side <= 30; ++side) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto g = generate_grid_triangulation(side, seed);
      CHECK(g.n == grid_vertices(side));
      CHECK(g.m == grid_edges(side));
      CHECK(validate(g).empty());
    }
  }
}

TEST_CASE("grid seeds change the diagonals") {
  CHECK_FALSE(generate_grid_triangulation(10, 1) == generate_grid_triangulation(10, 2));
}

TEST_CASE("grid vertex 1 is the corner on the outer face") {
  const auto g = generate_grid_triangulation(6, 4);
  // The outer face is the unique orbit of length 4(side-1).
  const auto orbits = oracle::face_orbits(g);
  const auto outer = std::find_if(orbits.begin(), orbits.end(), [](const auto& o) { return o.size() == 20; });
  REQUIRE(outer != orbits.end());
  CHECK(std::any_of(outer->begin(), outer->end(), [&](EdgeIndex e) { return g.edges[e].src == 1; }));
}

TEST_CASE("degrees sum to 2m and twins are involutive") {
  const auto g = generate_grid_triangulation(12, 9);
  std::size_t total = 0;
  for (VertexId v = 1; v <= g.n; ++v) total += g.degree(v);
  CHECK(total == 2 * g.m);
  for (EdgeIndex e = 0; e < g.edges.size(); ++e) {
    const auto& twin = g.edges[g.edges[e].cmp];
    CHECK(twin.cmp == e);
    CHECK(twin.src == g.edges[e].tgt);
  }
}
