#include "k4cover/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace k4cover {

VertexId MultiGraph::add_vertex() {
  VertexId id = next_vertex_++;
  incidence_.emplace(id, std::vector<EdgeId>{});
  return id;
}

void MultiGraph::add_vertex(VertexId id) {
  if (id < 0) throw GraphError("negative vertex id " + std::to_string(id));
  incidence_.try_emplace(id);
  next_vertex_ = std::max(next_vertex_, id + 1);
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
  if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
  auto iu = incidence_.find(u);
  auto iv = incidence_.find(v);
  if (iu == incidence_.end() || iv == incidence_.end())
    throw GraphError("edge endpoint is not a vertex");
  EdgeId id = next_edge_++;
  edges_.emplace(id, Edge{id, u, v});
  iu->second.push_back(id);
  iv->second.push_back(id);
  return id;
}

void MultiGraph::insert_edge(const Edge& e) {
  if (e.u == e.v) throw GraphError("loop at vertex " + std::to_string(e.u));
  if (edges_.count(e.id)) throw GraphError("duplicate edge id " + std::to_string(e.id));
  auto iu = incidence_.find(e.u);
  auto iv = incidence_.find(e.v);
  if (iu == incidence_.end() || iv == incidence_.end())
    throw GraphError("edge endpoint is not a vertex");
  edges_.emplace(e.id, e);
  auto place = [&](std::vector<EdgeId>& inc) {
    inc.insert(std::upper_bound(inc.begin(), inc.end(), e.id), e.id);
  };
  place(iu->second);
  place(iv->second);
  next_edge_ = std::max(next_edge_, e.id + 1);
}

void MultiGraph::remove_edge(EdgeId e) {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw GraphError("unknown edge " + std::to_string(e));
  for (VertexId x : {it->second.u, it->second.v}) {
    auto& inc = incidence_.at(x);
    inc.erase(std::find(inc.begin(), inc.end(), e));
  }
  edges_.erase(it);
}

void MultiGraph::remove_vertex(VertexId v) {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) throw GraphError("unknown vertex " + std::to_string(v));
  std::vector<EdgeId> inc = it->second;
  for (EdgeId e : inc) remove_edge(e);
  incidence_.erase(v);
}

const Edge& MultiGraph::edge(EdgeId e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw GraphError("unknown edge " + std::to_string(e));
  return it->second;
}

std::vector<VertexId> MultiGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(incidence_.size());
  for (const auto& [v, inc] : incidence_) out.push_back(v);
  return out;
}

VertexSet MultiGraph::vertex_set() const {
  VertexSet out;
  for (const auto& [v, inc] : incidence_) out.insert(out.end(), v);
  return out;
}

std::vector<Edge> MultiGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [id, e] : edges_) out.push_back(e);
  return out;
}

const std::vector<EdgeId>& MultiGraph::incident(VertexId v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) throw GraphError("unknown vertex " + std::to_string(v));
  return it->second;
}

std::vector<VertexId> MultiGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (EdgeId e : incident(v)) out.push_back(edges_.at(e).other(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t MultiGraph::multiplicity(VertexId u, VertexId v) const {
  return edges_between(u, v).size();
}

std::vector<EdgeId> MultiGraph::edges_between(VertexId u, VertexId v) const {
  std::vector<EdgeId> out;
  auto it = incidence_.find(u);
  if (it == incidence_.end() || !has_vertex(v)) return out;
  for (EdgeId e : it->second)
    if (edges_.at(e).other(u) == v) out.push_back(e);
  return out;
}

void MultiGraph::reserve_ids(VertexId next_vertex, EdgeId next_edge) {
  next_vertex_ = std::max(next_vertex_, next_vertex);
  next_edge_ = std::max(next_edge_, next_edge);
}

bool operator==(const MultiGraph& a, const MultiGraph& b) {
  if (a.incidence_.size() != b.incidence_.size() || a.edges_.size() != b.edges_.size())
    return false;
  for (auto ia = a.incidence_.begin(), ib = b.incidence_.begin(); ia != a.incidence_.end();
       ++ia, ++ib)
    if (ia->first != ib->first) return false;
  for (auto ia = a.edges_.begin(), ib = b.edges_.begin(); ia != a.edges_.end(); ++ia, ++ib) {
    const Edge& x = ia->second;
    const Edge& y = ib->second;
    if (x.id != y.id || !x.joins(y.u, y.v)) return false;
  }
  return true;
}

DenseGraph::DenseGraph(const MultiGraph& g) : ids(g.vertices()), edges(g.edges()) {
  adj.resize(ids.size());
  for (int pos = 0; pos < static_cast<int>(edges.size()); ++pos) {
    int a = index_of(edges[pos].u);
    int b = index_of(edges[pos].v);
    adj[a].emplace_back(b, pos);
    adj[b].emplace_back(a, pos);
  }
}

int DenseGraph::index_of(VertexId v) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  if (it == ids.end() || *it != v) return -1;
  return static_cast<int>(it - ids.begin());
}

Contraction contract_edge(const MultiGraph& g, EdgeId e) {
  if (!g.has_edge(e)) throw GraphError("contract_edge: unknown edge " + std::to_string(e));
  const Edge target = g.edge(e);
  MultiGraph out = g;
  VertexId merged = out.add_vertex();
  for (VertexId end : {target.u, target.v}) {
    for (EdgeId f : g.incident(end)) {
      if (!out.has_edge(f)) continue;
      VertexId other = g.edge(f).other(end);
      out.remove_edge(f);
      if (other != target.u && other != target.v) out.add_edge(merged, other);
    }
  }
  out.remove_vertex(target.u);
  out.remove_vertex(target.v);
  return {std::move(out), MergeRecord{target.u, target.v, merged}};
}

std::span<const int> BlockCutForest::blocks_of(VertexId v) const {
  auto it = vertex_blocks.find(v);
  if (it == vertex_blocks.end()) return {};
  return it->second;
}

BlockCutForest blocks_and_cuts(const MultiGraph& g) {
  const DenseGraph d(g);
  const int n = d.size();
  BlockCutForest out;
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> raw_blocks;
  std::vector<char> is_cut(n, 0);
  int timer = 0;

  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
    int children;
  };
  std::vector<Frame> stack;
  std::vector<int> comp_of(n, -1);
  std::vector<int> comp_first;  // smallest vertex index of each component
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    comp_first.push_back(root);
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, 0, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      comp_of[f.v] = static_cast<int>(comp_first.size()) - 1;
      if (f.next < d.adj[f.v].size()) {
        auto [w, pos] = d.adj[f.v][f.next++];
        if (pos == f.parent_edge) continue;
        if (disc[w] == -1) {
          edge_stack.push_back(pos);
          disc[w] = low[w] = timer++;
          f.children++;
          stack.push_back({w, pos, 0, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(pos);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) is_cut[done.v] = 1;
        continue;
      }
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] >= disc[parent.v]) {
        if (parent.parent_edge != -1) is_cut[parent.v] = 1;
        std::vector<int> block;
        while (true) {
          int pos = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(pos);
          if (pos == done.parent_edge) break;
        }
        raw_blocks.push_back(std::move(block));
      }
    }
  }

  std::sort(raw_blocks.begin(), raw_blocks.end(),
            [](const auto& a, const auto& b) { return *std::min_element(a.begin(), a.end()) <
                                                      *std::min_element(b.begin(), b.end()); });
  std::vector<std::vector<int>> block_idx;  // dense vertex indices per block
  std::vector<std::vector<int>> blocks_at(n);
  for (auto& b : raw_blocks) {
    std::vector<EdgeId> ids;
    std::vector<int> vs;
    for (int pos : b) {
      ids.push_back(d.edges[pos].id);
      vs.push_back(d.index_of(d.edges[pos].u));
      vs.push_back(d.index_of(d.edges[pos].v));
    }
    std::sort(ids.begin(), ids.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    const int bi = static_cast<int>(out.blocks.size());
    VertexSet named;
    for (int v : vs) {
      named.insert(named.end(), d.ids[v]);
      blocks_at[v].push_back(bi);
    }
    out.blocks.push_back(std::move(ids));
    out.block_vertices.push_back(std::move(named));
    block_idx.push_back(std::move(vs));
  }
  for (int v = 0; v < n; ++v) {
    if (!blocks_at[v].empty()) out.vertex_blocks.emplace_hint(out.vertex_blocks.end(), d.ids[v], blocks_at[v]);
    if (is_cut[v]) out.cut_vertices.insert(out.cut_vertices.end(), d.ids[v]);
  }

  // Orient each component's block tree away from its smallest cut vertex.
  std::vector<int> comp_root(comp_first.size(), -1);
  for (int v = n - 1; v >= 0; --v)
    if (is_cut[v]) comp_root[comp_of[v]] = v;
  out.block_parent_cut.assign(out.blocks.size(), kNoVertex);
  std::vector<char> block_seen(out.blocks.size(), 0);
  std::vector<char> cut_seen(n, 0);
  for (int root : comp_root) {
    if (root < 0) {
      out.component_roots.push_back(std::nullopt);
      continue;
    }
    out.component_roots.push_back(d.ids[root]);
    std::deque<int> queue{root};
    cut_seen[root] = 1;
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (int b : blocks_at[c]) {
        if (block_seen[b]) continue;
        block_seen[b] = 1;
        out.block_parent_cut[b] = d.ids[c];
        for (int w : block_idx[b]) {
          if (w == c || !is_cut[w] || cut_seen[w]) continue;
          cut_seen[w] = 1;
          out.cut_parent_block[d.ids[w]] = b;
          queue.push_back(w);
        }
      }
    }
  }
  return out;
}

VertexSet boundary(const MultiGraph& g, const VertexSet& x) {
  VertexSet out;
  for (VertexId v : x) {
    for (EdgeId e : g.incident(v)) {
      if (!x.count(g.edge(e).other(v))) {
        out.insert(v);
        break;
      }
    }
  }
  return out;
}

MultiGraph induced_subgraph(const MultiGraph& g, const VertexSet& x) {
  MultiGraph out;
  for (VertexId v : x)
    if (g.has_vertex(v)) out.add_vertex(v);
  for (const Edge& e : g.edges())
    if (x.count(e.u) && x.count(e.v)) out.insert_edge(e);
  out.reserve_ids(g.next_vertex_id(), g.next_edge_id());
  return out;
}

MultiGraph delete_vertices(const MultiGraph& g, const VertexSet& x) {
  MultiGraph out = g;
  for (VertexId v : x)
    if (out.has_vertex(v)) out.remove_vertex(v);
  return out;
}

std::vector<VertexSet> connected_components(const MultiGraph& g) {
  const DenseGraph d(g);
  std::vector<char> seen(d.size(), 0);
  std::vector<VertexSet> out;
  for (int s = 0; s < d.size(); ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::vector<int> todo{s};
    seen[s] = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      comp.insert(d.ids[v]);
      for (auto [w, pos] : d.adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          todo.push_back(w);
        }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const MultiGraph& g) { return connected_components(g).size() <= 1; }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool intersects(const VertexSet& a, const VertexSet& b) {
  for (VertexId v : a)
    if (b.count(v)) return true;
  return false;
}

}  // namespace k4cover
