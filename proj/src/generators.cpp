#include "k4cover/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k4cover::gen {

namespace {
int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
}  // namespace

MultiGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  MultiGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

MultiGraph complete(int n) {
  MultiGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

MultiGraph cycle(int n) {
  MultiGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

MultiGraph path(int n) {
  MultiGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

MultiGraph petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return from_edges(10, e);
}

MultiGraph theta(int inner) {
  MultiGraph g;
  g.add_vertex();
  g.add_vertex();
  for (int p = 0; p < 3; ++p) {
    VertexId prev = 0;
    for (int i = 0; i < inner; ++i) {
      VertexId v = g.add_vertex();
      g.add_edge(prev, v);
      prev = v;
    }
    g.add_edge(prev, 1);
  }
  return g;
}

MultiGraph random_multigraph(int n, int m, Rng& rng, bool multi) {
  MultiGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  if (n < 2) return g;
  const int simple_max = n * (n - 1) / 2;
  if (!multi) m = std::min(m, simple_max);
  while (static_cast<int>(g.num_edges()) < m) {
    int u = uniform(rng, 0, n - 1);
    int v = uniform(rng, 0, n - 1);
    if (u == v) continue;
    if (!multi && g.adjacent(u, v)) continue;
    g.add_edge(u, v);
  }
  return g;
}

MultiGraph random_sp(int n, Rng& rng) {
  MultiGraph g;
  if (n <= 0) return g;
  g.add_vertex();
  std::vector<EdgeId> live;
  std::vector<std::size_t> slot;  // edge id -> position in `live`
  auto push = [&](EdgeId e) {
    if (slot.size() <= static_cast<std::size_t>(e)) slot.resize(e + 1);
    slot[e] = live.size();
    live.push_back(e);
  };
  auto drop = [&](EdgeId e) {
    std::size_t i = slot[e];
    live[i] = live.back();
    slot[live[i]] = i;
    live.pop_back();
  };
  while (static_cast<int>(g.num_vertices()) < n) {
    const int roll = uniform(rng, 0, 99);
    VertexId w = g.add_vertex();
    if (live.empty() || roll < 15) {
      VertexId u = uniform(rng, 0, w - 1);
      push(g.add_edge(u, w));
      continue;
    }
    EdgeId e = live[uniform(rng, 0, static_cast<int>(live.size()) - 1)];
    const Edge ed = g.edge(e);
    if (roll < 50) {
      drop(e);
      g.remove_edge(e);
    }
    push(g.add_edge(ed.u, w));
    push(g.add_edge(w, ed.v));
  }
  return g;
}

Planted planted(int n, int k, Rng& rng) {
  if (k < 0 || n - k < 3) throw std::invalid_argument("planted: need n - k >= 3");
  MultiGraph base = random_sp(n - k, rng);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Planted out;
  for (int i = 0; i < n; ++i) out.graph.add_vertex(i);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const Edge& e : base.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
  const int base_n = n - k;
  for (int s = 0; s < k; ++s) {
    VertexId spoiler = perm[base_n + s];
    out.spoilers.insert(spoiler);
    std::vector<VertexId> pool(base_n);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    const int deg = std::min(base_n, uniform(rng, 3, 5));
    for (int i = 0; i < deg; ++i) edges.emplace_back(spoiler, perm[pool[i]]);
  }
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) out.graph.add_edge(u, v);
  return out;
}

}  // namespace k4cover::gen
