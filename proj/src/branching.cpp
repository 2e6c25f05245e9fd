#include "k4cover/branching.hpp"

#include <algorithm>
#include <deque>

namespace k4cover {

ComponentIndex::ComponentIndex(const MultiGraph& g, const VertexSet& s_set) {
  MultiGraph gs = induced_subgraph(g, s_set);
  auto comps = connected_components(gs);
  num_cc_ = static_cast<int>(comps.size());
  for (int i = 0; i < num_cc_; ++i)
    for (VertexId v : comps[i]) cc_[v] = i;
  BlockCutForest bcf = blocks_and_cuts(gs);
  num_bc_ = static_cast<int>(bcf.blocks.size());
  for (int b = 0; b < num_bc_; ++b)
    for (VertexId v : bcf.block_vertices[b]) bc_[v].push_back(b);
  for (VertexId v : s_set) {
    auto& list = bc_[v];
    if (list.empty()) list.push_back(num_bc_++);
    std::sort(list.begin(), list.end());
  }
}

bool ComponentIndex::share_block(VertexId a, VertexId b) const {
  const auto& x = bc(a);
  const auto& y = bc(b);
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) return true;
    if (x[i] < y[j]) ++i;
    else ++j;
  }
  return false;
}

bool ComponentIndex::common_block(const std::vector<VertexId>& xs) const {
  if (xs.empty()) return true;
  std::vector<int> common = bc(xs[0]);
  for (std::size_t i = 1; i < xs.size() && !common.empty(); ++i) {
    std::vector<int> next;
    const auto& other = bc(xs[i]);
    std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  return !common.empty();
}

bool ComponentIndex::spans_components(const std::vector<VertexId>& xs) const {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (cc(xs[i]) != cc(xs[0])) return true;
  return false;
}

bool ComponentIndex::spans_blocks(const std::vector<VertexId>& xs) const {
  // Vertex block sets are subtrees of the block-cut tree, so pairwise sharing
  // a block is the same as all sharing one.
  std::map<int, std::vector<VertexId>> by_cc;
  for (VertexId x : xs) by_cc[cc(x)].push_back(x);
  for (const auto& [c, group] : by_cc)
    if (!common_block(group)) return true;
  return false;
}

VertexSet Classification::of(Bucket b) const {
  VertexSet out;
  for (const auto& [v, bb] : bucket)
    if (bb == b) out.insert(v);
  return out;
}

Classification classify(const Instance& inst) {
  Classification c;
  for (VertexId v : inst.g.vertices()) {
    if (inst.in_s(v)) continue;
    std::size_t n = s_neighbors(inst, v).size();
    c.bucket[v] = n == 0 ? Bucket::N0 : n == 1 ? Bucket::N1 : n == 2 ? Bucket::N2 : Bucket::Overflow;
  }
  return c;
}

const char* to_string(BranchKind kind) {
  switch (kind) {
    case BranchKind::Rule1: return "branch-1";
    case BranchKind::Rule2: return "branch-2";
    case BranchKind::Rule3: return "branch-3";
  }
  return "?";
}

namespace {

std::vector<VertexId> s_neighbors_of_set(const Instance& inst, const VertexSet& x) {
  VertexSet out;
  for (VertexId v : x)
    for (VertexId w : inst.g.neighbors(v))
      if (inst.in_s(w)) out.insert(w);
  return {out.begin(), out.end()};
}

void check_subset_of_f(const Instance& inst, const VertexSet& x) {
  if (x.empty()) throw BranchError("branching set is empty");
  for (VertexId v : x) {
    if (!inst.g.has_vertex(v)) throw BranchError("branching set has an unknown vertex");
    if (inst.in_s(v)) throw BranchError("branching set meets S");
  }
}

BranchSet deletion_children(const Instance& inst, const VertexSet& x, BranchKind kind) {
  BranchSet out;
  out.kind = kind;
  out.x = x;
  for (VertexId v : x) {
    MultiGraph g = inst.g;
    g.remove_vertex(v);
    Instance child = make_instance(std::move(g), inst.s_set, inst.k - 1);
    child.committed = {v};
    out.children.push_back(std::move(child));
  }
  return out;
}

BranchSet with_union_child(const Instance& inst, const VertexSet& x, BranchKind kind) {
  BranchSet out = deletion_children(inst, x, kind);
  VertexSet grown = set_union(inst.s_set, x);
  out.union_child_feasible = is_k4_minor_free(induced_subgraph(inst.g, grown));
  out.children.push_back(make_instance(inst.g, std::move(grown), inst.k));
  return out;
}

bool closes_k4(const Instance& inst, VertexId v) {
  VertexSet sx = inst.s_set;
  sx.insert(v);
  return !is_k4_minor_free(induced_subgraph(inst.g, sx));
}

}  // namespace

BranchSet branch_rule1(const Instance& inst, const VertexSet& x) {
  check_subset_of_f(inst, x);
  if (is_k4_minor_free(induced_subgraph(inst.g, set_union(inst.s_set, x))))
    throw BranchError("branching rule 1: G[S + X] has no K4 minor");
  return deletion_children(inst, x, BranchKind::Rule1);
}

BranchSet branch_rule2(const Instance& inst, const VertexSet& x) {
  check_subset_of_f(inst, x);
  if (!is_connected(induced_subgraph(inst.g, x))) throw BranchError("branching rule 2: X is not connected");
  ComponentIndex index(inst);
  if (!index.spans_components(s_neighbors_of_set(inst, x)))
    throw BranchError("branching rule 2: S-neighbours lie in one component");
  return with_union_child(inst, x, BranchKind::Rule2);
}

BranchSet branch_rule3(const Instance& inst, const VertexSet& x) {
  check_subset_of_f(inst, x);
  if (!is_connected(induced_subgraph(inst.g, x))) throw BranchError("branching rule 3: X is not connected");
  ComponentIndex index(inst);
  if (!index.spans_blocks(s_neighbors_of_set(inst, x)))
    throw BranchError("branching rule 3: no S-neighbour pair in distinct blocks of one component");
  return with_union_child(inst, x, BranchKind::Rule3);
}

std::optional<BranchSet> simplify(const Instance& inst, const ComponentIndex& index) {
  for (VertexId v : inst.g.vertices()) {
    if (inst.in_s(v)) continue;
    auto ns = s_neighbors(inst, v);
    // A pendant vertex cannot create a K4 minor in the minor-free graph G[S].
    if (ns.size() >= 2 && closes_k4(inst, v)) return deletion_children(inst, {v}, BranchKind::Rule1);
    if (index.spans_components(ns)) return with_union_child(inst, {v}, BranchKind::Rule2);
    if (index.spans_blocks(ns)) return with_union_child(inst, {v}, BranchKind::Rule3);
  }
  return std::nullopt;
}

std::optional<BranchSet> simplify(const Instance& inst) { return simplify(inst, ComponentIndex(inst)); }

bool all_in_low_buckets(const Instance& inst) {
  for (VertexId v : inst.g.vertices())
    if (!inst.in_s(v) && s_neighbors(inst, v).size() > 2) return false;
  return true;
}

bool is_independent(const Instance& inst, const ComponentIndex& index) {
  for (VertexId v : inst.g.vertices()) {
    if (inst.in_s(v)) continue;
    auto nb = inst.g.neighbors(v);
    for (VertexId w : nb)
      if (!inst.in_s(w)) return false;
    if (nb.size() != 2) return false;
    if (!index.share_block(nb[0], nb[1])) return false;
    if (closes_k4(inst, v)) return false;
  }
  return true;
}

bool is_independent(const Instance& inst) { return is_independent(inst, ComponentIndex(inst)); }

VertexSet find_branch_path(const Instance& inst, const MultiGraph& g_f,
                           const ExtendedSPDecomposition& decomp, int alpha, BranchKind kind,
                           const ComponentIndex& index) {
  if (kind == BranchKind::Rule1) throw BranchError("find_branch_path: rule 1 has no path form");
  const MultiGraph ga = decomp.subgraph_below(g_f, alpha);
  std::map<VertexId, std::vector<VertexId>> ns;
  for (VertexId v : ga.vertices()) {
    auto n = s_neighbors(inst, v);
    if (!n.empty()) ns[v] = std::move(n);
  }
  auto witnesses = [&](VertexId u, VertexId w) {
    std::vector<VertexId> both = ns.at(u);
    both.insert(both.end(), ns.at(w).begin(), ns.at(w).end());
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    return kind == BranchKind::Rule2 ? index.spans_components(both) : index.spans_blocks(both);
  };
  for (const auto& [u, n] : ns)
    if (witnesses(u, u)) return {u};

  // Shortest qualifying path, first through N0 interiors only, then through anything.
  for (bool n0_only : {true, false}) {
    std::vector<VertexId> best;
    for (const auto& [u, n] : ns) {
      std::map<VertexId, VertexId> parent{{u, u}};
      std::deque<VertexId> q{u};
      std::vector<VertexId> found;
      while (!q.empty() && found.empty()) {
        VertexId cur = q.front();
        q.pop_front();
        for (VertexId w : ga.neighbors(cur)) {
          if (parent.count(w)) continue;
          parent[w] = cur;
          if (ns.count(w) && witnesses(u, w)) {
            for (VertexId p = w; p != u; p = parent[p]) found.push_back(p);
            found.push_back(u);
            break;
          }
          if (!n0_only || !ns.count(w)) q.push_back(w);
        }
      }
      if (!found.empty() && (best.empty() || found.size() < best.size())) best = found;
    }
    if (!best.empty()) return {best.begin(), best.end()};
  }
  throw BranchError("find_branch_path: no qualifying pair below the node");
}

}  // namespace k4cover
