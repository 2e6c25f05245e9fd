#pragma once

#include <cstdint>
#include <random>

#include "k4cover/multigraph.hpp"

namespace k4cover::gen {

using Rng = std::mt19937_64;

MultiGraph complete(int n);
MultiGraph cycle(int n);
MultiGraph path(int n);
MultiGraph petersen();
// Two vertices joined by three internally disjoint paths with `inner` interior
// vertices each; the poles are 0 and 1.
MultiGraph theta(int inner);
MultiGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

// Uniform random endpoints; parallel edges allowed when `multi` is set.
MultiGraph random_multigraph(int n, int m, Rng& rng, bool multi = true);
// Grown by pendant attachments, edge subdivisions and triangle extensions,
// so treewidth stays at most two.
MultiGraph random_sp(int n, Rng& rng);

struct Planted {
  MultiGraph graph;
  VertexSet spoilers;
};
// A series-parallel base on n-k vertices plus k spoilers, each attached to at
// least three base vertices; vertex ids are shuffled.
Planted planted(int n, int k, Rng& rng);

}  // namespace k4cover::gen
