#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k4cover {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using VertexSet = std::set<VertexId>;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

struct Edge {
  EdgeId id = kNoEdge;
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool joins(VertexId a, VertexId b) const {
    return (u == a && v == b) || (u == b && v == a);
  }
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Loopless undirected multigraph. Vertex and edge ids are allocated
// monotonically and never reused by copies derived from the same graph, so
// ids stay meaningful across a chain of reductions.
class MultiGraph {
 public:
  MultiGraph() = default;

  VertexId add_vertex();
  void add_vertex(VertexId id);
  EdgeId add_edge(VertexId u, VertexId v);
  // Re-inserts an edge under its existing id (used when copying subgraphs).
  void insert_edge(const Edge& e);

  void remove_edge(EdgeId e);
  void remove_vertex(VertexId v);

  bool has_vertex(VertexId v) const { return incidence_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }
  const Edge& edge(EdgeId e) const;

  std::size_t num_vertices() const { return incidence_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return incidence_.empty(); }

  // Sorted by id.
  std::vector<VertexId> vertices() const;
  VertexSet vertex_set() const;
  std::vector<Edge> edges() const;

  // Incident edge ids in ascending order; parallel edges appear separately.
  const std::vector<EdgeId>& incident(VertexId v) const;
  // Degree counts edge multiplicity.
  std::size_t degree(VertexId v) const { return incident(v).size(); }
  // Distinct neighbours, ascending.
  std::vector<VertexId> neighbors(VertexId v) const;
  std::size_t multiplicity(VertexId u, VertexId v) const;
  std::vector<EdgeId> edges_between(VertexId u, VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const { return multiplicity(u, v) > 0; }

  VertexId next_vertex_id() const { return next_vertex_; }
  EdgeId next_edge_id() const { return next_edge_; }
  // Keeps id allocation in step with another graph of the same lineage.
  void reserve_ids(VertexId next_vertex, EdgeId next_edge);

  friend bool operator==(const MultiGraph& a, const MultiGraph& b);

 private:
  std::map<VertexId, std::vector<EdgeId>> incidence_;
  std::map<EdgeId, Edge> edges_;
  VertexId next_vertex_ = 0;
  EdgeId next_edge_ = 0;
};

// Compact 0..n-1 indexed copy of a multigraph for traversal-heavy code.
struct DenseGraph {
  std::vector<VertexId> ids;                          // index -> vertex id
  std::vector<Edge> edges;                            // position -> edge
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour index, edge position)

  explicit DenseGraph(const MultiGraph& g);
  int index_of(VertexId v) const;  // -1 if absent
  int size() const { return static_cast<int>(ids.size()); }
};

struct MergeRecord {
  VertexId first = kNoVertex;
  VertexId second = kNoVertex;
  VertexId merged = kNoVertex;
};

struct Contraction {
  MultiGraph graph;
  MergeRecord record;
};

// Merges the endpoints of e into a fresh vertex; loops vanish, parallel edges stay.
Contraction contract_edge(const MultiGraph& g, EdgeId e);

struct BlockCutForest {
  // Each block is a sorted list of edge ids; blocks are ordered by smallest edge id.
  std::vector<std::vector<EdgeId>> blocks;
  std::vector<VertexSet> block_vertices;
  VertexSet cut_vertices;
  std::map<VertexId, std::vector<int>> vertex_blocks;
  // Per connected component (ordered by smallest vertex): the smallest cut vertex, if any.
  std::vector<std::optional<VertexId>> component_roots;

  bool is_cut(VertexId v) const { return cut_vertices.count(v) != 0; }
  std::span<const int> blocks_of(VertexId v) const;
  // Block tree orientation from the component root: parent cut vertex of a block
  // (kNoVertex for a root block of a component without cut vertices).
  std::vector<VertexId> block_parent_cut;
  // Parent block of a non-root cut vertex.
  std::map<VertexId, int> cut_parent_block;
};

BlockCutForest blocks_and_cuts(const MultiGraph& g);

VertexSet boundary(const MultiGraph& g, const VertexSet& x);
MultiGraph induced_subgraph(const MultiGraph& g, const VertexSet& x);
MultiGraph delete_vertices(const MultiGraph& g, const VertexSet& x);
std::vector<VertexSet> connected_components(const MultiGraph& g);
bool is_connected(const MultiGraph& g);

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool intersects(const VertexSet& a, const VertexSet& b);

}  // namespace k4cover
