#include "k4cover/rules.hpp"

#include <algorithm>
#include <deque>

#include "k4cover/decompose.hpp"

namespace k4cover {

const char* to_string(RuleTag tag) {
  switch (tag) {
    case RuleTag::OneBoundaryComponent: return "1-boundary(a)";
    case RuleTag::OneBoundaryCut: return "1-boundary(b)";
    case RuleTag::Bypass: return "bypass";
    case RuleTag::Parallel: return "parallel";
    case RuleTag::Chandelier: return "chandelier";
    case RuleTag::TwoBoundary: return "2-boundary";
  }
  return "?";
}

Instance make_instance(MultiGraph g, VertexSet s_set, int k) {
  Instance inst;
  inst.g = std::move(g);
  inst.s_set = std::move(s_set);
  inst.k = k;
  inst.trace.s_set = inst.s_set;
  return inst;
}

std::vector<VertexId> s_neighbors(const Instance& inst, VertexId v) {
  std::vector<VertexId> out;
  for (VertexId w : inst.g.neighbors(v))
    if (inst.in_s(w)) out.push_back(w);
  return out;
}

namespace {

// Applies graph edits to an instance while recording them as one trace step.
class Recorder {
 public:
  Recorder(Instance& inst, RuleTag tag) : inst_(inst) { step_.rule = tag; }

  void remove_edge(EdgeId e) {
    auto added = std::find_if(step_.added_edges.begin(), step_.added_edges.end(),
                              [&](const Edge& a) { return a.id == e; });
    if (added != step_.added_edges.end())
      step_.added_edges.erase(added);
    else
      step_.deleted_edges.push_back(inst_.g.edge(e));
    inst_.g.remove_edge(e);
  }

  void remove_vertex(VertexId v) {
    std::vector<EdgeId> inc = inst_.g.incident(v);
    for (EdgeId e : inc) remove_edge(e);
    inst_.g.remove_vertex(v);
    auto added = std::find(step_.added_vertices.begin(), step_.added_vertices.end(), v);
    if (added != step_.added_vertices.end())
      step_.added_vertices.erase(added);
    else
      step_.deleted_vertices.insert(v);
  }

  VertexId add_vertex() {
    VertexId v = inst_.g.add_vertex();
    step_.added_vertices.push_back(v);
    return v;
  }

  EdgeId add_edge(VertexId u, VertexId v) {
    EdgeId e = inst_.g.add_edge(u, v);
    step_.added_edges.push_back(inst_.g.edge(e));
    return e;
  }

  TraceStep& step() { return step_; }
  void commit() { inst_.trace.steps.push_back(std::move(step_)); }

 private:
  Instance& inst_;
  TraceStep step_;
};

void require_in_f(const Instance& inst, const VertexSet& x, const char* who) {
  for (VertexId v : x) {
    if (!inst.g.has_vertex(v)) throw RuleError(std::string(who) + ": unknown vertex");
    if (inst.in_s(v)) throw RuleError(std::string(who) + ": vertex lies in S");
  }
}

std::size_t edges_leaving(const MultiGraph& g, const VertexSet& x) {
  std::size_t out = 0;
  for (VertexId v : x)
    for (EdgeId e : g.incident(v))
      if (!x.count(g.edge(e).other(v))) ++out;
  return out;
}

// Block-cut tree bookkeeping for 1-boundary site discovery.
struct Sides {
  BlockCutForest bcf;
  std::vector<std::vector<VertexId>> block_child_cuts;
  std::map<VertexId, std::vector<int>> cut_child_blocks;
  std::vector<int> block_s;          // S vertices strictly below the parent cut
  std::map<VertexId, int> cut_s;     // S vertices in the subtree of the cut, itself included
  std::map<VertexId, int> comp_s;    // per component root cut: S vertices in the component
  std::map<VertexId, VertexId> comp_of_cut;

  explicit Sides(const Instance& inst) : bcf(blocks_and_cuts(inst.g)) {
    const std::size_t nb = bcf.blocks.size();
    block_child_cuts.resize(nb);
    block_s.assign(nb, 0);
    for (const auto& [w, b] : bcf.cut_parent_block) block_child_cuts[b].push_back(w);
    for (std::size_t b = 0; b < nb; ++b)
      if (bcf.block_parent_cut[b] != kNoVertex)
        cut_child_blocks[bcf.block_parent_cut[b]].push_back(static_cast<int>(b));
    for (const auto& root : bcf.component_roots) {
      if (!root) continue;
      // BFS order, then accumulate in reverse.
      std::vector<std::pair<bool, int>> order;  // (is_cut, id)
      std::deque<std::pair<bool, int>> q{{true, *root}};
      while (!q.empty()) {
        auto cur = q.front();
        q.pop_front();
        order.push_back(cur);
        if (cur.first) {
          comp_of_cut[cur.second] = *root;
          for (int b : cut_child_blocks[cur.second]) q.emplace_back(false, b);
        } else {
          for (VertexId w : block_child_cuts[cur.second]) q.emplace_back(true, w);
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (it->first) {
          VertexId c = it->second;
          int total = inst.in_s(c) ? 1 : 0;
          for (int b : cut_child_blocks[c]) total += block_s[b];
          cut_s[c] = total;
        } else {
          int b = it->second;
          int total = 0;
          for (VertexId v : bcf.block_vertices[b])
            if (!bcf.is_cut(v) && inst.in_s(v)) ++total;
          for (VertexId w : block_child_cuts[b]) total += cut_s[w];
          block_s[b] = total;
        }
      }
      comp_s[*root] = cut_s[*root];
    }
  }

  bool is_bridge(int b) const { return bcf.blocks[b].size() == 1; }

  // Vertices of the subtree hanging from block b, its parent cut excluded.
  VertexSet below_block(int b) const {
    VertexSet out;
    std::vector<int> todo{b};
    const VertexId top = bcf.block_parent_cut[b];
    while (!todo.empty()) {
      int cur = todo.back();
      todo.pop_back();
      for (VertexId v : bcf.block_vertices[cur])
        if (v != top) out.insert(v);
      for (VertexId w : block_child_cuts[cur]) {
        auto it = cut_child_blocks.find(w);
        if (it != cut_child_blocks.end())
          for (int c : it->second) todo.push_back(c);
      }
    }
    return out;
  }

  VertexSet below_cut(VertexId w) const {
    VertexSet out{w};
    auto it = cut_child_blocks.find(w);
    if (it != cut_child_blocks.end())
      for (int b : it->second) {
        VertexSet part = below_block(b);
        out.insert(part.begin(), part.end());
      }
    return out;
  }
};

VertexSet component_of(const MultiGraph& g, VertexId v) {
  for (VertexSet& c : connected_components(g))
    if (c.count(v)) return std::move(c);
  return {};
}

}  // namespace

Instance rule_1boundary(const Instance& inst, const VertexSet& x) {
  if (x.empty()) throw RuleError("1-boundary: empty set");
  require_in_f(inst, x, "1-boundary");
  Instance out = inst;
  const bool connected = is_connected(induced_subgraph(inst.g, x));
  if (connected && edges_leaving(inst.g, x) <= 1) {
    Recorder rec(out, RuleTag::OneBoundaryComponent);
    for (VertexId v : x) rec.remove_vertex(v);
    rec.commit();
    return out;
  }
  VertexSet b = boundary(inst.g, x);
  if (b.size() != 1) throw RuleError("1-boundary: boundary has " + std::to_string(b.size()) + " vertices");
  Recorder rec(out, RuleTag::OneBoundaryCut);
  for (VertexId v : x)
    if (!b.count(v)) rec.remove_vertex(v);
  rec.commit();
  return out;
}

Instance rule_bypass(const Instance& inst, VertexId v) {
  if (!inst.g.has_vertex(v) || inst.in_s(v)) throw RuleError("bypass: vertex must lie in F");
  if (inst.g.degree(v) != 2) throw RuleError("bypass: degree is not two");
  auto nb = inst.g.neighbors(v);
  if (nb.size() != 2) throw RuleError("bypass: parallel edges to a single neighbour");
  if (inst.in_s(nb[0]) && inst.in_s(nb[1])) throw RuleError("bypass: both neighbours in S");
  Instance out = inst;
  Recorder rec(out, RuleTag::Bypass);
  rec.remove_vertex(v);
  rec.add_edge(nb[0], nb[1]);
  rec.commit();
  return out;
}

Instance rule_parallel(const Instance& inst, VertexId u, VertexId v) {
  if (!inst.g.has_vertex(u) || !inst.g.has_vertex(v)) throw RuleError("parallel: unknown vertex");
  if (inst.in_s(u) && inst.in_s(v)) throw RuleError("parallel: both endpoints in S");
  auto es = inst.g.edges_between(u, v);
  if (es.size() < 2) throw RuleError("parallel: multiplicity below two");
  Instance out = inst;
  Recorder rec(out, RuleTag::Parallel);
  for (std::size_t i = 1; i < es.size(); ++i) rec.remove_edge(es[i]);
  rec.commit();
  return out;
}

namespace {
void check_chandelier(const Instance& inst, const std::vector<VertexId>& p, VertexId hub) {
  if (p.size() < 4) throw RuleError("chandelier: path needs at least four vertices");
  if (!inst.g.has_vertex(hub) || !inst.in_s(hub)) throw RuleError("chandelier: hub not in S");
  VertexSet seen(p.begin(), p.end());
  if (seen.size() != p.size()) throw RuleError("chandelier: repeated vertex");
  require_in_f(inst, seen, "chandelier");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (s_neighbors(inst, p[i]) != std::vector<VertexId>{hub})
      throw RuleError("chandelier: S-neighbourhood is not the hub");
    if (i + 1 < p.size() && !inst.g.adjacent(p[i], p[i + 1]))
      throw RuleError("chandelier: not a path");
    if (i > 0 && i + 1 < p.size() && inst.g.degree(p[i]) != 3)
      throw RuleError("chandelier: inner vertex degree is not three");
  }
}
}  // namespace

Instance rule_chandelier(const Instance& inst, const std::vector<VertexId>& x_path,
                         VertexId x_hub) {
  check_chandelier(inst, x_path, x_hub);
  const VertexId u2 = x_path[1];
  const VertexId u3 = x_path[2];
  Instance out = inst;
  Recorder rec(out, RuleTag::Chandelier);
  std::vector<VertexId> others;
  for (VertexId end : {u2, u3})
    for (EdgeId e : inst.g.incident(end)) {
      VertexId o = inst.g.edge(e).other(end);
      if (o != u2 && o != u3) others.push_back(o);
    }
  rec.remove_vertex(u2);
  rec.remove_vertex(u3);
  VertexId ue = rec.add_vertex();
  for (VertexId o : others) rec.add_edge(ue, o);
  auto hub_edges = out.g.edges_between(ue, x_hub);
  for (std::size_t i = 1; i < hub_edges.size(); ++i) rec.remove_edge(hub_edges[i]);
  rec.step().merge = MergeRecord{u2, u3, ue};
  rec.step().u2 = u2;
  rec.commit();
  return out;
}

Instance rule_2boundary(const Instance& inst, const VertexSet& x) {
  require_in_f(inst, x, "2-boundary");
  if (x.empty() || !is_connected(induced_subgraph(inst.g, x)))
    throw RuleError("2-boundary: G[X] is not connected");
  VertexSet b = boundary(inst.g, x);
  if (b.size() != 2) throw RuleError("2-boundary: boundary has " + std::to_string(b.size()) + " vertices");
  const VertexId s = *b.begin();
  const VertexId t = *b.rbegin();
  VertexSet interior = set_difference(x, b);
  if (interior.empty()) return inst;
  MultiGraph gx = induced_subgraph(inst.g, x);
  gx.add_edge(s, t);
  const bool series_parallel = is_k4_minor_free(gx);
  const bool shrink_to_edge = series_parallel && x.size() > 2;
  const bool gadget = !series_parallel && x.size() > 4;
  if (!shrink_to_edge && !gadget) return inst;
  Instance out = inst;
  Recorder rec(out, RuleTag::TwoBoundary);
  for (VertexId v : interior) rec.remove_vertex(v);
  if (shrink_to_edge) {
    if (!out.g.adjacent(s, t)) rec.add_edge(s, t);
  } else {
    VertexId a = rec.add_vertex();
    VertexId bb = rec.add_vertex();
    rec.add_edge(a, bb);
    rec.add_edge(a, t);
    rec.add_edge(a, s);
    rec.add_edge(bb, t);
    rec.add_edge(bb, s);
    rec.step().x0_new = {a, bb};
  }
  rec.step().x0 = interior;
  rec.step().s = s;
  rec.step().t = t;
  rec.commit();
  return out;
}

namespace {

std::optional<VertexSet> s_free_component(const Instance& inst) {
  for (const VertexSet& comp : connected_components(inst.g))
    if (!intersects(comp, inst.s_set)) return comp;
  return std::nullopt;
}

std::optional<VertexSet> find_1boundary_component(const Instance& inst, const Sides& sides) {
  const auto& bcf = sides.bcf;
  for (std::size_t b = 0; b < bcf.blocks.size(); ++b) {
    if (!sides.is_bridge(static_cast<int>(b))) continue;
    const VertexId top = bcf.block_parent_cut[b];
    if (top == kNoVertex) {
      // A component that is a single edge with one endpoint in S.
      const Edge& e = inst.g.edge(bcf.blocks[b][0]);
      for (VertexId end : {std::min(e.u, e.v), std::max(e.u, e.v)})
        if (!inst.in_s(end)) return VertexSet{end};
      continue;
    }
    if (sides.block_s[b] == 0) return sides.below_block(static_cast<int>(b));
    // The side above the bridge.
    for (VertexId w : sides.block_child_cuts[b]) {
      VertexId root = sides.comp_of_cut.at(w);
      if (sides.comp_s.at(root) - sides.cut_s.at(w) == 0) {
        VertexSet comp = component_of(inst.g, w);
        return set_difference(comp, sides.below_cut(w));
      }
    }
  }
  return std::nullopt;
}

std::optional<VertexSet> find_1boundary_cut(const Instance& inst, const Sides& sides) {
  const auto& bcf = sides.bcf;
  for (std::size_t b = 0; b < bcf.blocks.size(); ++b) {
    const VertexId c = bcf.block_parent_cut[b];
    if (c == kNoVertex || inst.in_s(c) || sides.block_s[b] != 0) continue;
    VertexSet x = sides.below_block(static_cast<int>(b));
    x.insert(c);
    return x;
  }
  for (const auto& [w, b] : bcf.cut_parent_block) {
    if (inst.in_s(w)) continue;
    VertexId root = sides.comp_of_cut.at(w);
    if (sides.comp_s.at(root) - sides.cut_s.at(w) != 0) continue;
    VertexSet comp = component_of(inst.g, w);
    VertexSet x = set_difference(comp, sides.below_cut(w));
    x.insert(w);
    return x;
  }
  return std::nullopt;
}

}  // namespace

std::optional<VertexSet> find_1boundary_component(const Instance& inst) {
  if (auto comp = s_free_component(inst)) return comp;
  return find_1boundary_component(inst, Sides(inst));
}

std::optional<VertexSet> find_1boundary_cut(const Instance& inst) { return find_1boundary_cut(inst, Sides(inst)); }

std::optional<VertexId> find_bypass(const Instance& inst) {
  for (VertexId v : inst.g.vertices()) {
    if (inst.in_s(v) || inst.g.degree(v) != 2) continue;
    auto nb = inst.g.neighbors(v);
    if (nb.size() == 2 && !(inst.in_s(nb[0]) && inst.in_s(nb[1]))) return v;
  }
  return std::nullopt;
}

std::optional<std::pair<VertexId, VertexId>> find_parallel(const Instance& inst) {
  for (VertexId v : inst.g.vertices()) {
    const auto& inc = inst.g.incident(v);
    if (inc.size() < 2) continue;
    std::vector<VertexId> others;
    for (EdgeId e : inc) others.push_back(inst.g.edge(e).other(v));
    std::sort(others.begin(), others.end());
    for (std::size_t i = 1; i < others.size(); ++i) {
      if (others[i] != others[i - 1]) continue;
      VertexId u = others[i];
      if (inst.in_s(u) && inst.in_s(v)) continue;
      return std::make_pair(std::min(u, v), std::max(u, v));
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::vector<VertexId>, VertexId>> find_chandelier(const Instance& inst) {
  auto single_hub = [&](VertexId v) -> VertexId {
    auto ns = s_neighbors(inst, v);
    return ns.size() == 1 ? ns[0] : kNoVertex;
  };
  auto inner_ok = [&](VertexId v) {
    return !inst.in_s(v) && inst.g.degree(v) == 3 && inst.g.neighbors(v).size() == 3;
  };
  for (VertexId u2 : inst.g.vertices()) {
    if (!inner_ok(u2)) continue;
    VertexId x = single_hub(u2);
    if (x == kNoVertex) continue;
    auto n2 = inst.g.neighbors(u2);
    for (VertexId u3 : n2) {
      if (u3 == x || !inner_ok(u3) || single_hub(u3) != x) continue;
      VertexId u1 = kNoVertex, u4 = kNoVertex;
      for (VertexId w : n2)
        if (w != x && w != u3) u1 = w;
      for (VertexId w : inst.g.neighbors(u3))
        if (w != x && w != u2) u4 = w;
      if (u1 == kNoVertex || u4 == kNoVertex || u1 == u4) continue;
      if (single_hub(u1) != x || single_hub(u4) != x) continue;
      return std::make_pair(std::vector<VertexId>{u1, u2, u3, u4}, x);
    }
  }
  return std::nullopt;
}

std::optional<VertexSet> find_2boundary(const Instance& inst) {
  const VertexSet f = inst.f_set();
  MultiGraph gf = induced_subgraph(inst.g, f);
  if (!is_k4_minor_free(gf)) return std::nullopt;
  const ExtendedSPDecomposition d = build_extended_decomposition(gf);
  std::set<VertexSet> seen;
  auto applicable = [&](const VertexSet& x) {
    if (x.size() < 3 || !seen.insert(x).second) return false;
    VertexSet b = boundary(inst.g, x);
    if (b.size() != 2) return false;
    if (!is_connected(induced_subgraph(inst.g, x))) return false;
    if (x.size() > 4) return true;
    MultiGraph gx = induced_subgraph(inst.g, x);
    gx.add_edge(*b.begin(), *b.rbegin());
    return is_k4_minor_free(gx);
  };
  for (std::size_t a = 0; a < d.size(); ++a) {
    const int alpha = static_cast<int>(a);
    VertexSet va = d.vertices_below(alpha);
    if (applicable(va)) return va;
    if (d.at(alpha).block >= 0) {
      VertexSet vb = d.block_vertices_below(alpha);
      if (applicable(vb)) return vb;
    }
    const auto& ch = d.at(alpha).children;
    if (d.at(alpha).kind != DecompKind::Series || ch.size() < 3) continue;
    std::vector<VertexSet> parts;
    for (int c : ch) parts.push_back(d.vertices_below(c));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      VertexSet acc = parts[i];
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        acc.insert(parts[j].begin(), parts[j].end());
        if (i == 0 && j + 1 == parts.size()) break;
        if (applicable(acc)) return acc;
      }
    }
  }
  for (const VertexSet& bv : d.block_vertices)
    if (applicable(bv)) return bv;
  return std::nullopt;
}

std::optional<RuleTag> reduce_once(Instance& inst, bool allow_two_boundary) {
  std::optional<VertexSet> x = s_free_component(inst);
  if (!x) {
    const Sides sides(inst);
    x = find_1boundary_component(inst, sides);
    if (!x) x = find_1boundary_cut(inst, sides);
  }
  if (x) {
    inst = rule_1boundary(inst, *x);
    return inst.trace.steps.back().rule;
  }
  if (auto v = find_bypass(inst)) {
    inst = rule_bypass(inst, *v);
    return RuleTag::Bypass;
  }
  if (auto p = find_parallel(inst)) {
    inst = rule_parallel(inst, p->first, p->second);
    return RuleTag::Parallel;
  }
  if (auto c = find_chandelier(inst)) {
    inst = rule_chandelier(inst, c->first, c->second);
    return RuleTag::Chandelier;
  }
  if (!allow_two_boundary) return std::nullopt;
  if (auto x = find_2boundary(inst)) {
    std::size_t before = inst.trace.steps.size();
    inst = rule_2boundary(inst, *x);
    if (inst.trace.steps.size() == before)
      throw std::logic_error("2-boundary site did not reduce the instance");
    return RuleTag::TwoBoundary;
  }
  return std::nullopt;
}

Instance reduce_exhaustively(Instance inst, RuleCounts* counts) {
  while (auto tag = reduce_once(inst)) {
    if (counts) ++(*counts)[static_cast<int>(*tag)];
  }
  return inst;
}

bool is_reduced(const Instance& inst) {
  Instance copy = inst;
  return !reduce_once(copy).has_value();
}

VertexSet lift_solution(const ReductionTrace& trace, VertexSet w) {
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    const TraceStep& st = *it;
    if (st.rule == RuleTag::Chandelier && w.erase(st.merge.merged)) w.insert(st.u2);
    if (st.rule == RuleTag::TwoBoundary && intersects(w, st.x0_new)) {
      for (VertexId v : st.x0_new) w.erase(v);
      w.insert(st.t);
    }
  }
  if (intersects(w, trace.s_set)) throw std::logic_error("lifted solution meets S");
  return w;
}

MultiGraph replay(const MultiGraph& g, const ReductionTrace& trace) {
  MultiGraph out = g;
  for (const TraceStep& st : trace.steps) {
    for (const Edge& e : st.deleted_edges)
      if (out.has_edge(e.id)) out.remove_edge(e.id);
    for (VertexId v : st.deleted_vertices) out.remove_vertex(v);
    for (VertexId v : st.added_vertices) out.add_vertex(v);
    for (const Edge& e : st.added_edges) out.insert_edge(e);
  }
  return out;
}

}  // namespace k4cover
