#pragma once

#include <string>
#include <utility>

#include "oracle.hpp"
#include "pemb/construction.hpp"
#include "pemb/decode.hpp"
#include "pemb/embedding.hpp"
#include "pemb/spanning_tree.hpp"

namespace testing {

inline constexpr const char* kFig1A = "0110110101110010110100010100";
inline constexpr const char* kFig1B = "00101100110011";
inline constexpr const char* kFig1Bstar = "01001001110101";

inline std::string data_path(const std::string& name) { return std::string(PEMB_TEST_DATA) + "/" + name; }

struct Fixture {
  pemb::PlanarEmbedding g;
  pemb::ParentEdges parents;
};

inline Fixture fig1() {
  Fixture f;
  f.g = pemb::read_embedding_file(data_path("fig1.pg"));
  f.parents = pemb::read_tree_file(data_path("fig1.tree"), f.g);
  return f;
}

inline pemb::CompactEmbedding encode(const pemb::PlanarEmbedding& g, const pemb::ParentEdges& parents,
                                     int threads = 1) {
  const auto root = pemb::check_spanning_tree(g, parents);
  const auto tree = pemb::build_tree_adjacency(g, parents, threads);
  return pemb::build_compact(g, tree, root, threads);
}

inline pemb::CompactEmbedding encode_dfs(const pemb::PlanarEmbedding& g, int threads = 1) {
  return encode(g, pemb::sequential_dfs_parents(g, 1), threads);
}

inline pemb::CompactEmbedding from_bits(const std::string& a, const std::string& b, const std::string& s) {
  pemb::CompactEmbedding c;
  c.m = a.size() / 2;
  c.n = b.size() / 2 + 1;
  c.A = pemb::build_rank_select(pemb::BitArray::from_string(a), 1);
  c.B = pemb::build_bp(pemb::BitArray::from_string(b), 1);
  c.Bstar = pemb::build_bp(pemb::BitArray::from_string(s), 1);
  return c;
}

}  // namespace testing
