#include "k4cover/decompose.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace k4cover {

namespace {

// Children before parents, iteratively (SP-trees can be very deep).
std::vector<int> postorder(const SPTree& t) {
  std::vector<int> order;
  if (t.root < 0) return order;
  std::vector<std::pair<int, std::size_t>> stack{{t.root, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& ch = t.nodes[node].children;
    if (next < ch.size()) {
      int c = ch[next++];
      stack.emplace_back(c, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

VertexId other_terminal(const SpNode& n, VertexId x) { return n.source == x ? n.sink : n.source; }

// Series/parallel reduction on an edge list. Vertices are whatever appears in
// `edges`; the caller guarantees connectivity.
std::optional<SPTree> recognize_edges(const std::vector<Edge>& edges, VertexId s, VertexId t) {
  std::unordered_map<VertexId, int> index;
  std::vector<VertexId> ids;
  auto idx = [&](VertexId v) {
    auto [it, fresh] = index.emplace(v, static_cast<int>(ids.size()));
    if (fresh) ids.push_back(v);
    return it->second;
  };
  SPTree tree;
  std::vector<std::unordered_map<int, int>> nbr;
  auto attach = [&](int a, int b, int node) {
    auto it = nbr[a].find(b);
    if (it == nbr[a].end()) {
      nbr[a][b] = node;
      nbr[b][a] = node;
      return;
    }
    SpNode p;
    p.kind = SpKind::Parallel;
    p.source = ids[a];
    p.sink = ids[b];
    p.children = {it->second, node};
    tree.nodes.push_back(std::move(p));
    int pid = static_cast<int>(tree.nodes.size()) - 1;
    nbr[a][b] = pid;
    nbr[b][a] = pid;
  };
  for (const Edge& e : edges) {
    int a = idx(e.u);
    int b = idx(e.v);
    if (nbr.size() < ids.size()) nbr.resize(ids.size());
    SpNode leaf;
    leaf.source = e.u;
    leaf.sink = e.v;
    leaf.edge = e.id;
    tree.nodes.push_back(leaf);
    attach(a, b, static_cast<int>(tree.nodes.size()) - 1);
  }
  auto si = index.find(s);
  auto ti = index.find(t);
  if (si == index.end() || ti == index.end()) return std::nullopt;
  const int sx = si->second;
  const int tx = ti->second;

  std::set<std::pair<VertexId, int>> work;
  for (int v = 0; v < static_cast<int>(ids.size()); ++v)
    if (v != sx && v != tx && nbr[v].size() == 2) work.emplace(ids[v], v);
  std::size_t live = ids.size();
  while (!work.empty()) {
    int v = work.begin()->second;
    work.erase(work.begin());
    if (nbr[v].size() != 2) continue;
    auto it = nbr[v].begin();
    int a = it->first, x = it->second;
    ++it;
    int b = it->first, y = it->second;
    if (ids[b] < ids[a]) {
      std::swap(a, b);
      std::swap(x, y);
    }
    nbr[a].erase(v);
    nbr[b].erase(v);
    nbr[v].clear();
    --live;
    SpNode sn;
    sn.kind = SpKind::Series;
    sn.source = ids[a];
    sn.sink = ids[b];
    sn.children = {x, y};
    tree.nodes.push_back(std::move(sn));
    attach(a, b, static_cast<int>(tree.nodes.size()) - 1);
    for (int w : {a, b}) {
      if (w == sx || w == tx) continue;
      if (nbr[w].size() == 2)
        work.emplace(ids[w], w);
      else
        work.erase({ids[w], w});
    }
  }
  if (live != 2 || nbr[sx].size() != 1 || !nbr[sx].count(tx)) return std::nullopt;
  tree.root = nbr[sx].at(tx);
  // Orient the root from s to t.
  SpNode& r = tree.nodes[tree.root];
  if (r.source != s) {
    std::swap(r.source, r.sink);
    if (r.kind == SpKind::Series) std::reverse(r.children.begin(), r.children.end());
  }
  return tree;
}

// Flattens same-kind chains, sorts parallel children by smallest edge id and
// rebuilds parallel nodes as right-leaning binary chains. Output is numbered
// in preorder.
SPTree normalize(const SPTree& in) {
  SPTree out;
  if (in.root < 0) return out;
  std::vector<EdgeId> min_edge(in.nodes.size(), kNoEdge);
  for (int n : postorder(in)) {
    const SpNode& node = in.nodes[n];
    if (node.kind == SpKind::Leaf) {
      min_edge[n] = node.edge;
      continue;
    }
    EdgeId m = kNoEdge;
    for (int c : node.children)
      if (m == kNoEdge || min_edge[c] < m) m = min_edge[c];
    min_edge[n] = m;
  }

  struct Pending {
    int old;
    int parent;  // out node receiving this one, -1 for the root
    std::size_t slot;
  };
  std::vector<Pending> todo{{in.root, -1, 0}};
  auto emit = [&](SpKind kind, VertexId source, VertexId sink, std::size_t arity) {
    SpNode n;
    n.kind = kind;
    n.source = source;
    n.sink = sink;
    n.children.assign(arity, -1);
    out.nodes.push_back(std::move(n));
    return static_cast<int>(out.nodes.size()) - 1;
  };
  while (!todo.empty()) {
    const Pending cur_task = todo.back();
    todo.pop_back();
    const SpNode& node = in.nodes[cur_task.old];
    int self;
    if (node.kind == SpKind::Leaf) {
      out.nodes.push_back(node);
      self = static_cast<int>(out.nodes.size()) - 1;
    } else if (node.kind == SpKind::Series) {
      std::vector<int> flat;
      struct Frame {
        int n;
        std::size_t i;
        bool rev;
      };
      VertexId cur = node.source;
      std::vector<Frame> stack{{cur_task.old, 0, false}};
      while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& ch = in.nodes[f.n].children;
        if (f.i == ch.size()) {
          stack.pop_back();
          continue;
        }
        int c = ch[f.rev ? ch.size() - 1 - f.i : f.i];
        ++f.i;
        const SpNode& cn = in.nodes[c];
        if (cn.kind == SpKind::Series) {
          stack.push_back({c, 0, cn.source != cur});
        } else {
          flat.push_back(c);
          cur = other_terminal(cn, cur);
        }
      }
      self = emit(SpKind::Series, node.source, node.sink, flat.size());
      for (std::size_t k = 0; k < flat.size(); ++k) todo.push_back({flat[k], self, k});
    } else {
      std::vector<int> flat;
      std::vector<int> stack{cur_task.old};
      while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (int c : in.nodes[p].children) {
          if (in.nodes[c].kind == SpKind::Parallel)
            stack.push_back(c);
          else
            flat.push_back(c);
        }
      }
      std::sort(flat.begin(), flat.end(),
                [&](int a, int b) { return min_edge[a] < min_edge[b]; });
      // Binary chain P(c0, P(c1, ... P(c_{m-2}, c_{m-1}))).
      self = emit(SpKind::Parallel, node.source, node.sink, 2);
      int host = self;
      for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
        todo.push_back({flat[i], host, 0});
        if (i + 2 == flat.size()) {
          todo.push_back({flat[i + 1], host, 1});
        } else {
          int next = emit(SpKind::Parallel, node.source, node.sink, 2);
          out.nodes[host].children[1] = next;
          host = next;
        }
      }
    }
    if (cur_task.parent >= 0) out.nodes[cur_task.parent].children[cur_task.slot] = self;
  }
  out.root = 0;

  // Renumber in preorder.
  std::vector<int> order;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    order.push_back(n);
    const auto& ch = out.nodes[n].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  std::vector<int> rename(out.nodes.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) rename[order[i]] = static_cast<int>(i);
  SPTree numbered;
  numbered.nodes.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    SpNode n = out.nodes[order[i]];
    for (int& c : n.children) c = rename[c];
    numbered.nodes[i] = std::move(n);
  }
  numbered.root = 0;
  return numbered;
}

bool biconnected_edges(const MultiGraph& g) {
  if (g.num_vertices() < 2 || !is_connected(g)) return false;
  return blocks_and_cuts(g).cut_vertices.empty();
}

SPTree canonical_block_tree(const std::vector<Edge>& edges, VertexId s) {
  VertexId t = kNoVertex;
  for (const Edge& e : edges)
    if (e.u == s || e.v == s) {
      VertexId o = e.other(s);
      if (t == kNoVertex || o < t) t = o;
    }
  auto tree = recognize_edges(edges, s, t);
  if (!tree) throw GraphError("block is not series-parallel");
  return normalize(*tree);
}

}  // namespace

std::vector<Edge> SPTree::edges() const {
  std::vector<Edge> out;
  for (const SpNode& n : nodes)
    if (n.kind == SpKind::Leaf) out.push_back(Edge{n.edge, n.source, n.sink});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  return out;
}

MultiGraph SPTree::graph() const {
  MultiGraph g;
  for (const Edge& e : edges()) {
    g.add_vertex(e.u);
    g.add_vertex(e.v);
    g.insert_edge(e);
  }
  return g;
}

std::size_t SPTree::num_leaves() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const SpNode& n) { return n.kind == SpKind::Leaf; }));
}

bool operator==(const SPTree& a, const SPTree& b) {
  if ((a.root < 0) != (b.root < 0)) return false;
  if (a.root < 0) return true;
  std::vector<std::pair<int, int>> stack{{a.root, b.root}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    const SpNode& p = a.nodes[x];
    const SpNode& q = b.nodes[y];
    if (p.kind != q.kind || p.edge != q.edge || p.children.size() != q.children.size())
      return false;
    bool same = p.source == q.source && p.sink == q.sink;
    bool flipped = p.source == q.sink && p.sink == q.source;
    if (!same && !(flipped && p.kind != SpKind::Series)) return false;
    for (std::size_t i = 0; i < p.children.size(); ++i)
      stack.emplace_back(p.children[i], q.children[i]);
  }
  return true;
}

std::optional<SPTree> recognize_sp(const MultiGraph& g, VertexId s, VertexId t) {
  if (!g.has_vertex(s) || !g.has_vertex(t)) throw GraphError("recognize_sp: unknown terminal");
  if (s == t) throw GraphError("recognize_sp: terminals coincide");
  if (!is_connected(g)) throw GraphError("recognize_sp: graph is disconnected");
  if (g.num_edges() == 0) return std::nullopt;
  return recognize_edges(g.edges(), s, t);
}

SPTree canonicalize(const SPTree& tree, VertexId s) {
  if (tree.root < 0) return tree;
  const SpNode& r = tree.root_node();
  bool root_ok = r.kind == SpKind::Parallel && (r.source == s || r.sink == s);
  if (!root_ok && tree.num_leaves() >= 2) {
    MultiGraph g = tree.graph();
    if (g.has_vertex(s) && biconnected_edges(g)) return canonical_block_tree(g.edges(), s);
  }
  return normalize(tree);
}

bool is_canonical(const SPTree& tree, VertexId s) {
  if (tree.root < 0) return true;
  for (const SpNode& n : tree.nodes) {
    if (n.kind == SpKind::Parallel && n.children.size() != 2) return false;
    if (n.kind == SpKind::Series)
      for (int c : n.children)
        if (tree.nodes[c].kind == SpKind::Series) return false;
  }
  if (tree.num_leaves() < 2) return true;
  MultiGraph g = tree.graph();
  if (!g.has_vertex(s) || !biconnected_edges(g)) return true;
  const SpNode& r = tree.root_node();
  return r.kind == SpKind::Parallel && (r.source == s || r.sink == s);
}

// A graph is K4-minor-free exactly when deleting vertices of degree at most
// one and suppressing vertices of degree two (merging parallels) empties it.
bool is_k4_minor_free(const MultiGraph& g) {
  if (g.num_vertices() < 4) return true;
  const std::vector<VertexId> ids = g.vertices();
  const int n = static_cast<int>(ids.size());
  auto index = [&](VertexId v) { return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin()); };
  std::vector<std::unordered_set<int>> nbr(n);
  for (const Edge& e : g.edges()) {
    const int a = index(e.u), b = index(e.v);
    nbr[a].insert(b);
    nbr[b].insert(a);
  }
  std::vector<int> queue(n);
  for (int v = 0; v < n; ++v) queue[v] = v;
  std::vector<char> gone(n, 0);
  int left = n;
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    if (gone[v] || nbr[v].size() > 2) continue;
    gone[v] = 1;
    --left;
    const std::vector<int> around(nbr[v].begin(), nbr[v].end());
    for (int w : around) {
      nbr[w].erase(v);
      queue.push_back(w);
    }
    if (around.size() == 2) {
      nbr[around[0]].insert(around[1]);
      nbr[around[1]].insert(around[0]);
    }
  }
  return left == 0;
}

const char* to_string(DecompKind k) {
  switch (k) {
    case DecompKind::Cut: return "cut";
    case DecompKind::Series: return "S";
    case DecompKind::Parallel: return "P";
    case DecompKind::Edge: return "edge";
  }
  return "?";
}

const char* to_string(SpKind k) {
  switch (k) {
    case SpKind::Leaf: return "leaf";
    case SpKind::Series: return "S";
    case SpKind::Parallel: return "P";
  }
  return "?";
}

std::string to_dot(const SPTree& tree) {
  std::ostringstream os;
  os << "graph sptree {\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const SpNode& n = tree.nodes[i];
    os << "  n" << i << " [label=\"" << to_string(n.kind) << " {" << n.source << "," << n.sink
       << "}";
    if (n.kind == SpKind::Leaf) os << " e" << n.edge;
    os << "\"];\n";
    for (int c : n.children) os << "  n" << i << " -- n" << c << ";\n";
  }
  os << "}\n";
  return os.str();
}

ExtendedSPDecomposition build_extended_decomposition(const MultiGraph& g) {
  const BlockCutForest bcf = blocks_and_cuts(g);
  ExtendedSPDecomposition d;
  d.block_vertices = bcf.block_vertices;

  std::map<VertexId, std::vector<int>> hanging;
  for (std::size_t b = 0; b < bcf.blocks.size(); ++b)
    if (bcf.block_parent_cut[b] != kNoVertex)
      hanging[bcf.block_parent_cut[b]].push_back(static_cast<int>(b));

  auto add = [&](DecompNode n) {
    d.nodes.push_back(std::move(n));
    return static_cast<int>(d.nodes.size()) - 1;
  };
  auto link = [&](int parent, int child) {
    d.nodes[child].parent = parent;
    if (parent >= 0) d.nodes[parent].children.push_back(child);
  };
  auto add_cut = [&](VertexId c, int parent) {
    DecompNode n;
    n.label = {c};
    int id = add(std::move(n));
    link(parent, id);
    return id;
  };

  // Cut nodes whose hanging blocks still need expanding.
  std::deque<std::pair<VertexId, int>> cut_queue;
  auto add_block = [&](int b, VertexId terminal, int parent) {
    std::vector<Edge> edges;
    for (EdgeId e : bcf.blocks[b]) edges.push_back(g.edge(e));
    SPTree t = canonical_block_tree(edges, terminal);
    std::vector<int> map(t.nodes.size());
    std::map<VertexId, std::pair<EdgeId, int>> best_leaf;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const SpNode& sn = t.nodes[i];
      DecompNode n;
      n.kind = sn.kind == SpKind::Leaf     ? DecompKind::Edge
               : sn.kind == SpKind::Series ? DecompKind::Series
                                           : DecompKind::Parallel;
      n.label = {std::min(sn.source, sn.sink), std::max(sn.source, sn.sink)};
      n.block = b;
      n.edge = sn.edge;
      map[i] = add(std::move(n));
      if (sn.kind == SpKind::Leaf)
        for (VertexId x : {sn.source, sn.sink}) {
          auto it = best_leaf.find(x);
          if (it == best_leaf.end() || sn.edge < it->second.first)
            best_leaf[x] = {sn.edge, map[i]};
        }
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
      for (int c : t.nodes[i].children) link(map[i], map[c]);
    link(parent, map[t.root]);
    for (VertexId w : bcf.block_vertices[b]) {
      auto it = bcf.cut_parent_block.find(w);
      if (w != terminal && it != bcf.cut_parent_block.end() && it->second == b)
        cut_queue.emplace_back(w, add_cut(w, best_leaf.at(w).second));
    }
    return map[t.root];
  };

  auto comps = connected_components(g);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const VertexSet& comp = comps[ci];
    const auto& root_cut = bcf.component_roots[ci];
    if (comp.size() == 1) {
      d.roots.push_back(add_cut(*comp.begin(), -1));
      continue;
    }
    if (!root_cut) {
      VertexId s = *comp.begin();
      d.roots.push_back(add_block(bcf.blocks_of(s).front(), s, -1));
      continue;
    }
    int r = add_cut(*root_cut, -1);
    d.roots.push_back(r);
    cut_queue.emplace_back(*root_cut, r);
    while (!cut_queue.empty()) {
      auto [c, node] = cut_queue.front();
      cut_queue.pop_front();
      for (int b : hanging[c]) add_block(b, c, node);
    }
  }

  // Depths.
  for (int r : d.roots) {
    std::vector<int> stack{r};
    d.nodes[r].depth = 0;
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      for (int c : d.nodes[n].children) {
        d.nodes[c].depth = d.nodes[n].depth + 1;
        stack.push_back(c);
      }
    }
  }
  return d;
}

namespace {
template <typename F>
void visit_subtree(const ExtendedSPDecomposition& d, int alpha, F&& f) {
  std::vector<int> stack{alpha};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    f(n);
    for (int c : d.nodes[n].children) stack.push_back(c);
  }
}
}  // namespace

VertexSet ExtendedSPDecomposition::vertices_below(int alpha) const {
  VertexSet out;
  visit_subtree(*this, alpha, [&](int n) { out.insert(nodes[n].label.begin(), nodes[n].label.end()); });
  return out;
}

std::vector<EdgeId> ExtendedSPDecomposition::edges_below(int alpha) const {
  std::vector<EdgeId> out;
  visit_subtree(*this, alpha, [&](int n) {
    if (nodes[n].kind == DecompKind::Edge) out.push_back(nodes[n].edge);
  });
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet ExtendedSPDecomposition::block_vertices_below(int alpha) const {
  VertexSet out;
  const int b = nodes.at(alpha).block;
  if (b < 0) return VertexSet(nodes[alpha].label.begin(), nodes[alpha].label.end());
  std::vector<int> stack{alpha};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    if (nodes[n].block != b) continue;
    out.insert(nodes[n].label.begin(), nodes[n].label.end());
    for (int c : nodes[n].children) stack.push_back(c);
  }
  return out;
}

MultiGraph ExtendedSPDecomposition::subgraph_below(const MultiGraph& g, int alpha) const {
  MultiGraph out;
  for (VertexId v : vertices_below(alpha)) out.add_vertex(v);
  for (EdgeId e : edges_below(alpha)) out.insert_edge(g.edge(e));
  out.reserve_ids(g.next_vertex_id(), g.next_edge_id());
  return out;
}

std::vector<int> ExtendedSPDecomposition::bottom_up_order() const {
  std::vector<int> order(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return nodes[a].depth > nodes[b].depth; });
  return order;
}

std::string ExtendedSPDecomposition::to_dot() const {
  std::ostringstream os;
  os << "digraph decomposition {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const DecompNode& n = nodes[i];
    os << "  n" << i << " [label=\"" << k4cover::to_string(n.kind) << " {";
    for (std::size_t j = 0; j < n.label.size(); ++j) os << (j ? "," : "") << n.label[j];
    os << "}";
    if (n.kind == DecompKind::Edge) os << " e" << n.edge;
    os << "\"";
    if (n.kind == DecompKind::Cut) os << " shape=box";
    os << "];\n";
    for (int c : n.children) os << "  n" << i << " -> n" << c << ";\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

// Series-parallel core of a simple graph with a K4 minor: pendant vertices
// removed, degree-two vertices suppressed, parallel edges merged. Each core
// edge remembers the path of original vertices it stands for.
struct Core {
  MultiGraph graph;
  std::map<EdgeId, std::vector<VertexId>> path;  // from edge.u to edge.v
};

Core series_parallel_core(const MultiGraph& g) {
  Core c;
  c.graph = g;
  for (const Edge& e : g.edges()) c.path[e.id] = {e.u, e.v};
  auto oriented = [&](EdgeId e, VertexId from) {
    std::vector<VertexId> p = c.path.at(e);
    if (p.front() != from) std::reverse(p.begin(), p.end());
    return p;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : c.graph.vertices()) {
      const std::size_t deg = c.graph.degree(v);
      if (deg <= 1) {
        for (EdgeId e : std::vector<EdgeId>(c.graph.incident(v))) c.path.erase(e);
        c.graph.remove_vertex(v);
        changed = true;
        continue;
      }
      if (deg != 2) continue;
      const EdgeId e1 = c.graph.incident(v)[0], e2 = c.graph.incident(v)[1];
      const VertexId a = c.graph.edge(e1).other(v), b = c.graph.edge(e2).other(v);
      if (a == b) continue;  // a parallel pair; merged below
      std::vector<VertexId> p = oriented(e1, a);
      std::vector<VertexId> q = oriented(e2, v);
      p.insert(p.end(), q.begin() + 1, q.end());
      c.path.erase(e1);
      c.path.erase(e2);
      c.graph.remove_vertex(v);
      c.path[c.graph.add_edge(a, b)] = p;
      changed = true;
    }
    for (const Edge& e : c.graph.edges()) {
      if (!c.graph.has_edge(e.id)) continue;
      for (EdgeId other : c.graph.edges_between(e.u, e.v)) {
        if (other == e.id) continue;
        c.path.erase(other);
        c.graph.remove_edge(other);
        changed = true;
      }
    }
  }
  return c;
}

// Edge-minimal subgraph of g (simple, with a K4 minor) that still has one:
// a subdivision of K4, plus isolated vertices.
MultiGraph k4_subdivision(const MultiGraph& g) {
  Core core = series_parallel_core(g);
  MultiGraph& h = core.graph;
  for (const Edge& e : h.edges()) {
    MultiGraph trial = h;
    trial.remove_edge(e.id);
    if (!is_k4_minor_free(trial)) h = std::move(trial);
  }
  MultiGraph out;
  for (VertexId v : g.vertices()) out.add_vertex(v);
  for (const Edge& e : h.edges()) {
    const std::vector<VertexId>& p = core.path.at(e.id);
    for (std::size_t i = 1; i < p.size(); ++i) out.insert_edge(g.edge(g.edges_between(p[i - 1], p[i]).front()));
  }
  return out;
}

}  // namespace

std::optional<K4Witness> find_k4_model(const MultiGraph& g) {
  if (is_k4_minor_free(g)) return std::nullopt;
  // Work inside one offending block, with parallel edges collapsed.
  const BlockCutForest bcf = blocks_and_cuts(g);
  MultiGraph h;
  for (std::size_t b = 0; b < bcf.blocks.size(); ++b) {
    MultiGraph cand;
    for (VertexId v : bcf.block_vertices[b]) cand.add_vertex(v);
    for (EdgeId e : bcf.blocks[b]) {
      const Edge& ed = g.edge(e);
      if (!cand.adjacent(ed.u, ed.v)) cand.insert_edge(ed);
    }
    if (!is_k4_minor_free(cand)) {
      h = std::move(cand);
      break;
    }
  }
  h = k4_subdivision(h);
  // h is now a subdivision of K4 plus isolated vertices.
  std::vector<VertexId> branch;
  for (VertexId v : h.vertices()) {
    if (h.degree(v) == 3) branch.push_back(v);
    else if (h.degree(v) != 0 && h.degree(v) != 2)
      throw std::logic_error("find_k4_model: edge-minimal remainder is not a subdivision");
  }
  if (branch.size() != 4)
    throw std::logic_error("find_k4_model: expected four branch vertices");
  auto branch_index = [&](VertexId v) {
    auto it = std::find(branch.begin(), branch.end(), v);
    return it == branch.end() ? -1 : static_cast<int>(it - branch.begin());
  };
  K4Witness w;
  for (int i = 0; i < 4; ++i) w.branch_sets[i].insert(branch[i]);
  for (int i = 0; i < 4; ++i) {
    for (EdgeId first : h.incident(branch[i])) {
      std::vector<VertexId> walk{branch[i]};
      VertexId prev = branch[i];
      EdgeId via = first;
      VertexId cur = h.edge(first).other(prev);
      while (branch_index(cur) < 0) {
        walk.push_back(cur);
        const auto& inc = h.incident(cur);
        EdgeId next = inc[0] == via ? inc[1] : inc[0];
        prev = cur;
        via = next;
        cur = h.edge(next).other(prev);
      }
      int j = branch_index(cur);
      if (j < i) continue;
      // Absorb the subdividing vertices into branch set i, leaving one edge.
      for (std::size_t k = 1; k < walk.size(); ++k) w.branch_sets[i].insert(walk[k]);
      int pair = static_cast<int>(std::find(kK4Pairs.begin(), kK4Pairs.end(),
                                            std::pair<int, int>{i, j}) -
                                  kK4Pairs.begin());
      w.paths[pair] = {walk.back(), cur};
    }
  }
  return w;
}

bool verify_witness(const MultiGraph& g, const K4Witness& w) {
  std::map<VertexId, int> owner;
  for (int i = 0; i < 4; ++i) {
    const VertexSet& bs = w.branch_sets[i];
    if (bs.empty()) return false;
    for (VertexId v : bs) {
      if (!g.has_vertex(v) || owner.count(v)) return false;
      owner[v] = i;
    }
    if (!is_connected(induced_subgraph(g, bs))) return false;
  }
  VertexSet interior_used;
  for (int p = 0; p < 6; ++p) {
    const auto& path = w.paths[p];
    auto [i, j] = kK4Pairs[p];
    if (path.size() < 2) return false;
    for (VertexId v : path)
      if (!g.has_vertex(v)) return false;
    auto fo = owner.find(path.front());
    auto bo = owner.find(path.back());
    if (fo == owner.end() || bo == owner.end()) return false;
    bool forward = fo->second == i && bo->second == j;
    bool backward = fo->second == j && bo->second == i;
    if (!forward && !backward) return false;
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (!g.adjacent(path[k], path[k + 1])) return false;
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      if (owner.count(path[k]) || interior_used.count(path[k])) return false;
      interior_used.insert(path[k]);
    }
  }
  return true;
}

}  // namespace k4cover
