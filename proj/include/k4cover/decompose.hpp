#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k4cover/multigraph.hpp"

namespace k4cover {

enum class SpKind { Leaf, Series, Parallel };

struct SpNode {
  SpKind kind = SpKind::Leaf;
  // Terminals of the represented two-terminal graph. For a series node the
  // children are listed in order from `source` to `sink`.
  VertexId source = kNoVertex;
  VertexId sink = kNoVertex;
  EdgeId edge = kNoEdge;  // leaves only
  std::vector<int> children;
};

// Composition tree of a two-terminal series-parallel multigraph. Leaves
// correspond one-to-one with edges.
class SPTree {
 public:
  std::vector<SpNode> nodes;
  int root = -1;

  const SpNode& at(int i) const { return nodes.at(i); }
  const SpNode& root_node() const { return nodes.at(root); }
  std::vector<Edge> edges() const;
  // The represented multigraph (leaf edges with their original ids).
  MultiGraph graph() const;
  std::size_t num_leaves() const;

  friend bool operator==(const SPTree& a, const SPTree& b);
};

// Two-terminal SP recognition by series/parallel reduction. Requires a
// connected graph and s != t; returns nullopt when (g, s, t) is not
// two-terminal series-parallel.
std::optional<SPTree> recognize_sp(const MultiGraph& g, VertexId s, VertexId t);

// Flattens nested series nodes, makes parallel nodes binary, and for a
// biconnected graph re-roots so that the root is a parallel node with `s`
// among its terminals.
SPTree canonicalize(const SPTree& tree, VertexId s);
bool is_canonical(const SPTree& tree, VertexId s);

bool is_k4_minor_free(const MultiGraph& g);

enum class DecompKind { Cut, Series, Parallel, Edge };

struct DecompNode {
  DecompKind kind = DecompKind::Cut;
  std::vector<VertexId> label;  // one or two vertices, ascending
  int parent = -1;
  std::vector<int> children;
  int block = -1;  // owning block for nodes inherited from an SP-tree
  EdgeId edge = kNoEdge;
  int depth = 0;
};

// Block tree of a treewidth-two graph with every block replaced by its
// canonical SP-tree. A component consisting of a single vertex is
// represented by a childless cut node labelled with that vertex.
class ExtendedSPDecomposition {
 public:
  std::vector<DecompNode> nodes;
  std::vector<int> roots;  // one per connected component
  std::vector<VertexSet> block_vertices;

  const DecompNode& at(int i) const { return nodes.at(i); }
  std::size_t size() const { return nodes.size(); }

  // V_alpha: union of labels in the subtree.
  VertexSet vertices_below(int alpha) const;
  // E_alpha: edges of edge nodes in the subtree.
  std::vector<EdgeId> edges_below(int alpha) const;
  // V^B_alpha: labels of subtree nodes inherited from the same block as alpha.
  VertexSet block_vertices_below(int alpha) const;
  // G_alpha as a (not necessarily induced) subgraph of `g`.
  MultiGraph subgraph_below(const MultiGraph& g, int alpha) const;
  // Nodes ordered by decreasing depth, ties by index.
  std::vector<int> bottom_up_order() const;

  std::string to_dot() const;
};

ExtendedSPDecomposition build_extended_decomposition(const MultiGraph& g);

const char* to_string(DecompKind k);
const char* to_string(SpKind k);
std::string to_dot(const SPTree& tree);

// K4 model: four disjoint connected branch sets, and for each pair a path
// from one set to the other whose interior avoids every branch set and every
// other path. Pairs are ordered (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
struct K4Witness {
  std::array<VertexSet, 4> branch_sets;
  std::array<std::vector<VertexId>, 6> paths;
};

inline constexpr std::array<std::pair<int, int>, 6> kK4Pairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::optional<K4Witness> find_k4_model(const MultiGraph& g);
bool verify_witness(const MultiGraph& g, const K4Witness& w);

}  // namespace k4cover
