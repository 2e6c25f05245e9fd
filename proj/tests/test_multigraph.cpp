#include <gtest/gtest.h>

#include "k4cover/generators.hpp"
#include "k4cover/multigraph.hpp"

using namespace k4cover;

TEST(MultiGraph, RejectsLoopsAndUnknownIds) {
  MultiGraph g;
  g.add_vertex();
  EXPECT_THROW(g.add_edge(0, 0), GraphError);
  EXPECT_THROW(g.add_edge(0, 5), GraphError);
  EXPECT_THROW(g.remove_edge(3), GraphError);
}

TEST(MultiGraph, IdsAreNeverReused) {
  MultiGraph g = gen::path(3);
  g.remove_vertex(2);
  EXPECT_EQ(g.add_vertex(), 3);
  EXPECT_EQ(g.add_edge(0, 3), 2);
}

TEST(Contract, TriangleEdgeGivesDoubleEdge) {
  MultiGraph g = gen::cycle(3);
  auto c = contract_edge(g, 0);
  EXPECT_EQ(c.graph.num_vertices(), 2u);
  EXPECT_EQ(c.graph.num_edges(), 2u);
  EXPECT_EQ(c.graph.multiplicity(2, c.record.merged), 2u);
  EXPECT_EQ(c.record.first, 0);
  EXPECT_EQ(c.record.second, 1);
}

TEST(Contract, SingleEdgeLeavesIsolatedVertex) {
  auto c = contract_edge(gen::path(2), 0);
  EXPECT_EQ(c.graph.num_vertices(), 1u);
  EXPECT_EQ(c.graph.num_edges(), 0u);
}

TEST(Contract, K4EdgeGivesFiveEdgesOnThreeVertices) {
  auto c = contract_edge(gen::complete(4), 0);
  EXPECT_EQ(c.graph.num_vertices(), 3u);
  EXPECT_EQ(c.graph.num_edges(), 5u);
  EXPECT_EQ(c.graph.multiplicity(c.record.merged, 2), 2u);
  EXPECT_EQ(c.graph.multiplicity(c.record.merged, 3), 2u);
  EXPECT_EQ(c.graph.multiplicity(2, 3), 1u);
}

TEST(Contract, UnknownEdgeThrows) { EXPECT_THROW(contract_edge(gen::path(2), 7), GraphError); }

// Contracting e and deleting the merged vertex equals deleting both endpoints.
TEST(Contract, ThenDeleteMatchesDeletingEndpointsExhaustive) {
  gen::Rng rng(11);
  for (int round = 0; round < 400; ++round) {
    int n = 2 + round % 7;
    MultiGraph g = gen::random_multigraph(n, round % 13 + 1, rng);
    for (const Edge& e : g.edges()) {
      auto c = contract_edge(g, e.id);
      MultiGraph a = delete_vertices(c.graph, {c.record.merged});
      MultiGraph b = delete_vertices(g, {e.u, e.v});
      EXPECT_TRUE(a == b);
    }
  }
}

TEST(Blocks, PathHasTwoBlocks) {
  auto f = blocks_and_cuts(gen::path(3));
  ASSERT_EQ(f.blocks.size(), 2u);
  EXPECT_EQ(f.cut_vertices, VertexSet{1});
}

TEST(Blocks, Bowtie) {
  MultiGraph g = gen::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  auto f = blocks_and_cuts(g);
  ASSERT_EQ(f.blocks.size(), 2u);
  EXPECT_EQ(f.cut_vertices, VertexSet{2});
  EXPECT_EQ(f.block_vertices[0], (VertexSet{0, 1, 2}));
  EXPECT_EQ(f.component_roots.at(0), std::optional<VertexId>(2));
}

TEST(Blocks, BiconnectedHasOneBlock) {
  for (auto g : {gen::complete(5), gen::cycle(6), gen::petersen()}) {
    auto f = blocks_and_cuts(g);
    EXPECT_EQ(f.blocks.size(), 1u);
    EXPECT_TRUE(f.cut_vertices.empty());
  }
}

TEST(Blocks, ParallelEdgesFormABlock) {
  MultiGraph g = gen::from_edges(3, {{0, 1}, {0, 1}, {1, 2}});
  auto f = blocks_and_cuts(g);
  ASSERT_EQ(f.blocks.size(), 2u);
  EXPECT_EQ(f.blocks[0].size(), 2u);
  EXPECT_EQ(f.cut_vertices, VertexSet{1});
}

TEST(Blocks, CutVerticesMatchComponentCounts) {
  gen::Rng rng(5);
  for (int round = 0; round < 500; ++round) {
    int n = 1 + round % 10;
    MultiGraph g = gen::random_multigraph(n, round % 15, rng);
    auto f = blocks_and_cuts(g);
    std::size_t base = connected_components(g).size();
    for (VertexId v : g.vertices()) {
      bool cut = connected_components(delete_vertices(g, {v})).size() > base;
      EXPECT_EQ(f.is_cut(v), cut);
    }
    std::size_t covered = 0;
    for (const auto& b : f.blocks) covered += b.size();
    EXPECT_EQ(covered, g.num_edges());
  }
}

TEST(Boundary, Examples) {
  MultiGraph p = gen::path(3);
  EXPECT_TRUE(boundary(p, p.vertex_set()).empty());
  EXPECT_EQ(boundary(p, {0, 1}), VertexSet{1});
  MultiGraph star = gen::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(boundary(star, {0}), VertexSet{0});
}

TEST(Boundary, RandomSubsetsSatisfyDefinition) {
  gen::Rng rng(9);
  for (int round = 0; round < 300; ++round) {
    MultiGraph g = gen::random_multigraph(8, 12, rng);
    VertexSet x;
    for (VertexId v : g.vertices())
      if (rng() % 2) x.insert(v);
    VertexSet b = boundary(g, x);
    for (VertexId v : b) {
      EXPECT_TRUE(x.count(v));
      bool outside = false;
      for (VertexId w : g.neighbors(v)) outside |= !x.count(w);
      EXPECT_TRUE(outside);
    }
  }
}

TEST(Subgraphs, InduceAndDelete) {
  MultiGraph k4 = gen::complete(4);
  EXPECT_TRUE(delete_vertices(k4, {}) == k4);
  EXPECT_TRUE(induced_subgraph(k4, {}).empty());
  MultiGraph tri = delete_vertices(k4, {3});
  EXPECT_EQ(tri.num_vertices(), 3u);
  EXPECT_EQ(tri.num_edges(), 3u);
  MultiGraph ind = induced_subgraph(k4, {0, 1, 2});
  EXPECT_TRUE(ind == tri);
}

TEST(Components, Examples) {
  EXPECT_TRUE(connected_components(MultiGraph{}).empty());
  auto two = connected_components(gen::from_edges(4, {{0, 1}, {2, 3}}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1], (VertexSet{2, 3}));
  EXPECT_EQ(connected_components(gen::cycle(5)).size(), 1u);
}
