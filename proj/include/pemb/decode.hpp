#pragma once

#include "pemb/construction.hpp"
#include "pemb/embedding.hpp"
#include "pemb/spanning_tree.hpp"

namespace pemb {

struct DecodedEmbedding {
  PlanarEmbedding graph;
  ParentEdges parent_edge;  // the spanning tree encoded by B
};

// Rebuilds the rotation system from the compact form. Vertices carry their
// pre-order numbers; each group lists the ticks of its vertex in tour order,
// so the root group starts with tick 1 and every other group ends with the
// parent edge. Encoding the result with the returned tree reproduces c.
DecodedEmbedding decode_with_tree(const CompactEmbedding& c, int threads = 1);
PlanarEmbedding decode(const CompactEmbedding& c, int threads = 1);

// Tree file: `tree <n>`, then n lines with the 1-based E_G index of the
// edge v -> parent(v), 0 for the root. '#' comments allowed.
std::string write_tree(const ParentEdges& parents);
ParentEdges parse_tree(std::string_view text, const PlanarEmbedding& g);
ParentEdges read_tree_file(const std::filesystem::path& path, const PlanarEmbedding& g);
void write_tree_file(const ParentEdges& parents, const std::filesystem::path& path);

}  // namespace pemb
